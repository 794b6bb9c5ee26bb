// upos: exact positivity certificates for univariate rational polynomials.
//
// Subcommands:
//   certify  --domain R|halfline|interval A B  --kind wsos|pert  [--out F] [--stats]  POLY
//   verify   POLY CERT-FILE
//   witness  --domain R|halfline|interval A B  POLY
//   karlin   --domain R|halfline|interval A B  [--prec N] [--out F]  POLY
//   bench    --suite wilkinson|random-sos|sollya  [--degrees a:b:c] [--nu N]
//            [--coeff-bits N] [--seed S] [--jobs N]
//
// Exit codes: 0 success, 2 semantic negative result (negativity witness found
// or certificate rejected), 1 operational error (parse, I/O, unsupported).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "upos/certio.hpp"
#include "upos/errors.hpp"
#include "upos/interval.hpp"
#include "upos/karlin.hpp"
#include "upos/pertsos.hpp"
#include "upos/poly.hpp"
#include "upos/suites.hpp"
#include "upos/usos.hpp"

namespace {

using namespace upos;

long max_precision_cap() {
    if (const char* s = std::getenv("UPOS_MAX_PRECISION")) {
        long v = std::atol(s);
        if (v > 0) return v;
    }
    return 1L << 22;
}

// POLY arguments name a file when one exists, otherwise they are parsed as an
// inline expression / coefficient list.
RatPoly read_poly_arg(const std::string& arg) {
    std::ifstream in(arg);
    if (in) {
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_poly(buf.str());
    }
    return parse_poly(arg);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw io_error("cannot write '" + out_path + "'");
    out << text << "\n";
}

std::string witness_payload_json(const Rat& t, const Rat& value) {
    nlohmann::json j = {{"t", format_rational(t)}, {"value", format_rational(value)}};
    return j.dump();
}

// Positional layout: [A B] POLY, with the segment endpoints present exactly
// when --domain interval was chosen.
struct DomainArgs {
    std::string domain;
    Rat a, b;
    RatPoly poly;
};

DomainArgs parse_domain_args(const std::string& domain, const std::vector<std::string>& args) {
    DomainArgs out;
    out.domain = domain;
    if (domain == "interval") {
        if (args.size() != 3)
            throw domain_error("domain 'interval' expects three positionals: A B POLY");
        out.a = parse_rational(args[0]);
        out.b = parse_rational(args[1]);
        out.poly = read_poly_arg(args[2]);
    } else {
        if (args.size() != 1) throw domain_error("expected exactly one POLY argument");
        out.poly = read_poly_arg(args[0]);
    }
    return out;
}

long interval_output_bitsize(const IntervalCertificate& cert) {
    long total = 0;
    auto add = [&total](const std::vector<WeightedSquare>& group) {
        for (const WeightedSquare& ws : group) {
            total += static_cast<long>(bitsize(ws.w));
            for (long k = 0; k <= ws.s.degree(); ++k)
                total += static_cast<long>(bitsize(ws.s.coeff(static_cast<size_t>(k))));
        }
    };
    add(cert.even_group);
    add(cert.odd_group);
    return total;
}

void print_stats_common(const RatPoly& a) {
    std::cerr << "d = " << a.degree() << "\n"
              << "tau = " << a.tau() << "\n";
}

int cmd_certify(const DomainArgs& in, const std::string& kind, const std::string& out_path,
                bool stats) {
    if (kind == "pert") {
        if (in.domain != "R") {
            std::cerr << "error: --kind pert is only available on --domain R\n";
            return 1;
        }
        if (in.poly.is_zero() || in.poly.degree() % 2 != 0 || in.poly.degree() < 2) {
            std::cerr << "error: perturbed certificates require even degree >= 2\n";
            return 1;
        }
        try {
            PertCertificate cert = build_pert_cert(in.poly);
            write_output(serialize(envelope_for(in.poly, cert)), out_path);
            if (stats) {
                print_stats_common(in.poly);
                std::cerr << "b_exp = " << cert.b_exp << "\n"
                          << "lambda = " << cert.lambda << "\n";
            }
            return 0;
        } catch (const not_positive_error&) {
            if (std::optional<Rat> t = find_witness(in.poly)) {
                Rat v = in.poly.eval(*t);
                std::cout << witness_payload_json(*t, v) << "\n";
                if (!out_path.empty())
                    write_output(serialize(envelope_for(in.poly, NegativityWitness{*t, v})), out_path);
            } else {
                std::cerr << "not strictly positive (a real root exists)\n";
            }
            return 2;
        }
    }

    if (in.domain == "R") {
        CertifyResult res = certify_positive_R(in.poly);
        if (std::holds_alternative<NegativityWitness>(res)) {
            const auto& w = std::get<NegativityWitness>(res);
            std::cout << witness_payload_json(w.t, w.value) << "\n";
            if (!out_path.empty()) write_output(serialize(envelope_for(in.poly, w)), out_path);
            return 2;
        }
        const auto& cert = std::get<WsosCertificate>(res);
        write_output(serialize(envelope_for(in.poly, cert)), out_path);
        if (stats) {
            print_stats_common(in.poly);
            long b_exp = 0, kappa = 0;
            for (const WsosBlock& blk : cert.blocks) {
                b_exp = std::max(b_exp, blk.budget.b_exp);
                kappa = std::max(kappa, blk.budget.kappa);
            }
            std::cerr << "b_exp = " << b_exp << "\n"
                      << "kappa = " << kappa << "\n"
                      << "summands = " << total_summands(cert) << "\n"
                      << "output_bitsize = " << output_bitsize(cert) << "\n";
        }
        return 0;
    }

    try {
        IntervalCertificate cert = (in.domain == "halfline")
                                       ? certify_halfline(in.poly)
                                       : certify_interval(in.poly, in.a, in.b);
        write_output(serialize(envelope_for(in.poly, cert)), out_path);
        if (stats) {
            print_stats_common(in.poly);
            std::cerr << "summands = "
                      << static_cast<long>(cert.even_group.size() + cert.odd_group.size()) << "\n"
                      << "output_bitsize = " << interval_output_bitsize(cert) << "\n";
        }
        return 0;
    } catch (const not_positive_on_domain_error& e) {
        std::cout << witness_payload_json(e.t, e.value) << "\n";
        if (!out_path.empty())
            write_output(serialize(envelope_for(in.poly, NegativityWitness{e.t, e.value})), out_path);
        return 2;
    }
}

int cmd_verify(const std::string& poly_arg, const std::string& cert_arg) {
    RatPoly a = read_poly_arg(poly_arg);
    std::ifstream probe(cert_arg);
    std::string text = probe ? read_text_file(cert_arg) : cert_arg;
    CertificateEnvelope env = deserialize(text);
    VerifyResult res = verify(a, env);
    if (res.accepted) {
        std::cout << "accepted\n";
        return 0;
    }
    std::cerr << "rejected: " << res.reason << "\n";
    return 2;
}

int cmd_witness(const DomainArgs& in, const std::string& out_path) {
    std::optional<Rat> t;
    if (in.domain == "R") {
        t = find_witness(in.poly);
    } else if (in.domain == "halfline") {
        if (std::optional<Rat> y0 = find_witness(transform_halfline(in.poly))) t = *y0 * *y0;
    } else {
        long d = std::max<long>(in.poly.degree(), 0);
        if (std::optional<Rat> y0 =
                find_witness(transform_to_line(in.poly, d, in.a, in.b))) {
            Rat y2 = *y0 * *y0;
            t = (in.a + in.b * y2) / (Rat(1) + y2);
        }
    }
    if (!t) {
        std::cerr << "nonnegative on the requested domain; no witness exists\n";
        return 2;
    }
    Rat v = in.poly.eval(*t);
    if (!(v < 0)) throw internal_error("witness search returned a nonnegative point");
    std::cout << witness_payload_json(*t, v) << "\n";
    if (!out_path.empty())
        write_output(serialize(envelope_for(in.poly, NegativityWitness{*t, v})), out_path);
    return 0;
}

int cmd_karlin(const DomainArgs& in, long prec_opt, const std::string& out_path) {
    long prec = prec_opt > 0 ? prec_opt : karlin_default_precision(in.poly);
    long cap = max_precision_cap();
    try {
        for (;;) {
            try {
                KarlinDecomposition dec;
                if (in.domain == "R")
                    dec = decompose_R(in.poly, prec);
                else if (in.domain == "halfline")
                    dec = decompose_halfline(in.poly, prec);
                else
                    dec = decompose_interval(in.poly, in.a, in.b, prec);
                write_output(serialize(envelope_for(in.poly, dec)), out_path);
                return 0;
            } catch (const precision_insufficient_error&) {
                if (2 * prec > cap) throw;
                prec *= 2;
            }
        }
    } catch (const not_positive_on_domain_error& e) {
        std::cout << witness_payload_json(e.t, e.value) << "\n";
        return 2;
    } catch (const not_positive_error& e) {
        if (std::optional<Rat> t = find_witness(in.poly)) {
            std::cout << witness_payload_json(*t, in.poly.eval(*t)) << "\n";
        } else {
            std::cerr << "not strictly positive: " << e.what() << "\n";
        }
        return 2;
    }
}

struct BenchOptions {
    std::string suite;
    std::string degrees;
    long nu = 3;
    long coeff_bits = 40;
    std::uint64_t seed = 42;
    long jobs = 1;
};

std::vector<long> parse_degree_range(const std::string& text) {
    long start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
        start > stop || !in.eof())
        throw domain_error("--degrees expects START:STOP:STEP with positive STEP");
    std::vector<long> out;
    for (long d = start; d <= stop; d += step) out.push_back(d);
    return out;
}

int cmd_bench(const BenchOptions& opt) {
    if (opt.suite == "sollya") {
        std::cerr << "the sollya suite is not bundled: its nine polynomials come from an "
                     "external corpus that must be obtained separately\n";
        return 1;
    }
    if (opt.suite != "wilkinson" && opt.suite != "random-sos") {
        std::cerr << "error: unknown suite '" << opt.suite << "'\n";
        return 1;
    }
    std::string range = opt.degrees;
    if (range.empty()) range = (opt.suite == "wilkinson") ? "10:40:2" : "20:260:20";
    std::vector<long> degrees = parse_degree_range(range);
    for (long d : degrees)
        if (d < 2 || d % 2 != 0) {
            std::cerr << "error: suite '" << opt.suite << "' needs even degrees >= 2\n";
            return 1;
        }

    std::vector<BenchRow> rows(degrees.size());
    std::vector<std::string> failures(degrees.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(std::max<long>(opt.jobs, 1)))
#endif
    for (size_t i = 0; i < degrees.size(); ++i) {
        long d = degrees[i];
        try {
            RatPoly a = (opt.suite == "wilkinson")
                            ? wilkinson(d)
                            : random_sos(d, opt.nu, opt.coeff_bits,
                                         opt.seed + static_cast<std::uint64_t>(d));
            auto t0 = std::chrono::steady_clock::now();
            CertifyResult res = certify_positive_R(a);
            auto t1 = std::chrono::steady_clock::now();
            if (!std::holds_alternative<WsosCertificate>(res))
                throw internal_error("suite member failed to certify");
            const auto& cert = std::get<WsosCertificate>(res);
            BenchRow row;
            row.degree = d;
            row.input_bitsize = input_bitsize(a);
            row.output_bitsize = output_bitsize(cert);
            row.summands = total_summands(cert);
            for (const WsosBlock& blk : cert.blocks) {
                row.epsilon_exp = std::max(row.epsilon_exp, blk.budget.b_exp);
                row.kappa = std::max(row.kappa, blk.budget.kappa);
            }
            row.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            rows[i] = row;
        } catch (const error& e) {
            failures[i] = e.what();
        }
    }
    for (size_t i = 0; i < degrees.size(); ++i)
        if (!failures[i].empty()) {
            std::cerr << "error at degree " << degrees[i] << ": " << failures[i] << "\n";
            return 1;
        }

    std::cout << "degree,input_bitsize,output_bitsize,summands,epsilon_exp,kappa,time_ms\n";
    std::vector<double> xs, ys;
    for (const BenchRow& r : rows) {
        std::cout << r.degree << "," << r.input_bitsize << "," << r.output_bitsize << ","
                  << r.summands << "," << r.epsilon_exp << "," << r.kappa << ","
                  << r.time_ms << "\n";
        xs.push_back(static_cast<double>(r.degree) * static_cast<double>(r.input_bitsize));
        ys.push_back(static_cast<double>(r.output_bitsize));
    }
    if (xs.size() >= 2) {
        LinFit fit = least_squares_fit(xs, ys);
        std::printf("# fit output_bitsize ~ degree*input_bitsize: slope=%.4f intercept=%.2f r2=%.4f\n",
                    fit.slope, fit.intercept, fit.r2);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact positivity certificates for univariate rational polynomials"};
    app.require_subcommand(1);

    std::string c_domain = "R", c_kind = "wsos", c_out;
    bool c_stats = false;
    std::vector<std::string> c_args;
    CLI::App* certify = app.add_subcommand("certify", "produce a positivity certificate");
    certify->add_option("--domain", c_domain, "R | halfline | interval (then: A B POLY)")
        ->check(CLI::IsMember({"R", "halfline", "interval"}));
    certify->add_option("--kind", c_kind, "wsos | pert")->check(CLI::IsMember({"wsos", "pert"}));
    certify->add_option("--out", c_out, "write the certificate to this file");
    certify->add_flag("--stats", c_stats, "print size statistics to stderr");
    certify->add_option("args", c_args, "[A B] POLY")->expected(-1);

    std::string v_poly, v_cert;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check a certificate against a polynomial");
    verify_cmd->add_option("poly", v_poly, "polynomial (file or inline)")->required();
    verify_cmd->add_option("cert", v_cert, "certificate (file or inline JSON)")->required();

    std::string w_domain = "R", w_out;
    std::vector<std::string> w_args;
    CLI::App* witness_cmd = app.add_subcommand("witness", "search for a point where A < 0");
    witness_cmd->add_option("--domain", w_domain, "R | halfline | interval (then: A B POLY)")
        ->check(CLI::IsMember({"R", "halfline", "interval"}));
    witness_cmd->add_option("--out", w_out, "write the witness envelope to this file");
    witness_cmd->add_option("args", w_args, "[A B] POLY")->expected(-1);

    std::string k_domain = "R", k_out;
    long k_prec = 0;
    std::vector<std::string> k_args;
    CLI::App* karlin_cmd = app.add_subcommand("karlin", "two-square interlacing decomposition");
    karlin_cmd->add_option("--domain", k_domain, "R | halfline | interval (then: A B POLY)")
        ->check(CLI::IsMember({"R", "halfline", "interval"}));
    karlin_cmd->add_option("--prec", k_prec, "dyadic precision (default: from degree and bitsize)");
    karlin_cmd->add_option("--out", k_out, "write the decomposition to this file");
    karlin_cmd->add_option("args", k_args, "[A B] POLY")->expected(-1);

    BenchOptions bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "certification benchmark suites (CSV)");
    bench_cmd->add_option("--suite", bench.suite, "wilkinson | random-sos | sollya")->required();
    bench_cmd->add_option("--degrees", bench.degrees, "START:STOP:STEP");
    bench_cmd->add_option("--nu", bench.nu, "number of squares (random-sos)");
    bench_cmd->add_option("--coeff-bits", bench.coeff_bits, "coefficient bitsize (random-sos)");
    bench_cmd->add_option("--seed", bench.seed, "RNG seed");
    bench_cmd->add_option("--jobs", bench.jobs, "worker pool size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") ? 0 : 1;
    }

    try {
        if (certify->parsed())
            return cmd_certify(parse_domain_args(c_domain, c_args), c_kind, c_out, c_stats);
        if (verify_cmd->parsed()) return cmd_verify(v_poly, v_cert);
        if (witness_cmd->parsed()) return cmd_witness(parse_domain_args(w_domain, w_args), w_out);
        if (karlin_cmd->parsed())
            return cmd_karlin(parse_domain_args(k_domain, k_args), k_prec, k_out);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
