#include "upos/certio.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "upos/errors.hpp"

namespace upos {

using nlohmann::json;

std::string poly_hash(const RatPoly& a) {
    std::string text = format_poly(a);
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", h);
    return std::string("fnv1a64:") + hex;
}

namespace {

// ---------- building ----------

json poly_json(const RatPoly& p) {
    json arr = json::array();
    for (long k = 0; k <= p.degree(); ++k)
        arr.push_back(format_rational(p.coeff(static_cast<size_t>(k))));
    return arr;
}

json dyadic_list_json(const std::vector<Dyadic>& v) {
    json arr = json::array();
    for (const Dyadic& d : v) arr.push_back(format_dyadic(d));
    return arr;
}

json squares_weights_json(const std::vector<WeightedSquare>& v) {
    json arr = json::array();
    for (const WeightedSquare& ws : v) arr.push_back(format_rational(ws.w));
    return arr;
}

json squares_polys_json(const std::vector<WeightedSquare>& v) {
    json arr = json::array();
    for (const WeightedSquare& ws : v) arr.push_back(poly_json(ws.s));
    return arr;
}

json payload_json(const WsosCertificate& cert) {
    json blocks = json::array();
    for (const WsosBlock& blk : cert.blocks) {
        json odd = json::array();
        for (const OddTerm& t : blk.odd)
            odd.push_back({{"w", format_rational(t.w)}, {"sign", t.sign}, {"k", t.k}});
        json even = json::array();
        for (const EvenTerm& t : blk.even)
            even.push_back({{"w", format_rational(t.w)}, {"k", t.k}});
        json budget = {{"d", blk.budget.d},
                       {"tau", blk.budget.tau},
                       {"b_exp", blk.budget.b_exp},
                       {"b_cap", blk.budget.b_cap},
                       {"kappa", blk.budget.kappa},
                       {"kappa_cap", blk.budget.kappa_cap},
                       {"b_capped", blk.budget.b_capped},
                       {"kappa_capped", blk.budget.kappa_capped}};
        blocks.push_back({{"scale_exp", blk.scale_exp},
                          {"epsilon", format_rational(blk.epsilon)},
                          {"a_eps_d", format_rational(blk.a_eps_d)},
                          {"P", poly_json(blk.P)},
                          {"Q", poly_json(blk.Q)},
                          {"odd", odd},
                          {"even", even},
                          {"budget", budget}});
    }
    return {{"lc", format_rational(cert.lc)}, {"S", poly_json(cert.S)}, {"blocks", blocks}};
}

json payload_json(const IntervalCertificate& cert) {
    return {{"domain", cert.domain == IntervalDomain::segment ? "segment" : "halfline"},
            {"a", format_rational(cert.a)},
            {"b", format_rational(cert.b)},
            {"degree", cert.degree},
            {"even_weights", squares_weights_json(cert.even_group)},
            {"even_polys", squares_polys_json(cert.even_group)},
            {"odd_weights", squares_weights_json(cert.odd_group)},
            {"odd_polys", squares_polys_json(cert.odd_group)}};
}

json payload_json(const PertCertificate& cert) {
    json p = {{"P", poly_json(cert.P)},
              {"Q", poly_json(cert.Q)},
              {"lc", format_rational(cert.lc)},
              {"b_exp", cert.b_exp},
              {"lambda", cert.lambda},
              {"extra_weights", squares_weights_json(cert.extra)},
              {"extra_polys", squares_polys_json(cert.extra)}};
    if (cert.squarefree_witness) {
        p["witness_u"] = poly_json(cert.squarefree_witness->first);
        p["witness_v"] = poly_json(cert.squarefree_witness->second);
    }
    return p;
}

const char* karlin_domain_name(KarlinDomain d) {
    switch (d) {
        case KarlinDomain::real_line: return "R";
        case KarlinDomain::halfline: return "halfline";
        case KarlinDomain::segment: return "segment";
    }
    throw internal_error("unreachable Karlin domain");
}

json payload_json(const KarlinDecomposition& dec) {
    return {{"domain", karlin_domain_name(dec.domain)},
            {"a", format_rational(dec.a)},
            {"b", format_rational(dec.b)},
            {"P", poly_json(dec.P)},
            {"Q", poly_json(dec.Q)},
            {"alpha", format_rational(dec.alpha)},
            {"beta", format_rational(dec.beta)},
            {"karlin_x", dyadic_list_json(dec.karlin_x)},
            {"karlin_y", dyadic_list_json(dec.karlin_y)},
            {"precision", dec.precision},
            {"parity_swapped", dec.parity_swapped}};
}

json payload_json(const NegativityWitness& w) {
    return {{"t", format_rational(w.t)}, {"value", format_rational(w.value)}};
}

CertificateEnvelope make_envelope(const RatPoly& a, std::string kind, CertPayload payload,
                                  std::map<std::string, long> params) {
    CertificateEnvelope env;
    env.kind = std::move(kind);
    env.meta.poly_hash = poly_hash(a);
    env.meta.params = std::move(params);
    env.payload = std::move(payload);
    return env;
}

// ---------- parsing ----------

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw parse_error(msg, path);
}

const json& member(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path.empty() ? "/" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "/" + key, "missing member");
    return *it;
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

long get_long(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<long>();
}

bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

Rat get_rat(const json& j, const std::string& path) {
    std::string s = get_string(j, path);
    try {
        return parse_rational(s);
    } catch (const error&) {
        fail(path, "invalid rational '" + s + "'");
    }
}

Dyadic get_dyadic(const json& j, const std::string& path) {
    std::string s = get_string(j, path);
    try {
        return parse_dyadic(s);
    } catch (const error&) {
        fail(path, "invalid dyadic '" + s + "'");
    }
}

const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

RatPoly get_poly(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<Rat> c;
    c.reserve(j.size());
    size_t i = 0;
    for (const auto& el : j) {
        c.push_back(get_rat(el, path + "/" + std::to_string(i)));
        ++i;
    }
    return RatPoly(std::move(c));
}

std::vector<Dyadic> get_dyadic_list(const json& j, const std::string& path) {
    get_array(j, path);
    std::vector<Dyadic> out;
    out.reserve(j.size());
    size_t i = 0;
    for (const auto& el : j) {
        out.push_back(get_dyadic(el, path + "/" + std::to_string(i)));
        ++i;
    }
    return out;
}

std::vector<WeightedSquare> get_squares(const json& p, const char* wkey, const char* pkey,
                                        const std::string& base) {
    const json& weights = get_array(member(p, wkey, base), base + "/" + wkey);
    const json& polys = get_array(member(p, pkey, base), base + "/" + pkey);
    if (weights.size() != polys.size())
        fail(base + "/" + pkey, std::string("length differs from ") + wkey);
    std::vector<WeightedSquare> out;
    out.reserve(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) {
        WeightedSquare ws;
        ws.w = get_rat(weights[i], base + "/" + wkey + "/" + std::to_string(i));
        ws.s = get_poly(polys[i], base + "/" + pkey + "/" + std::to_string(i));
        out.push_back(std::move(ws));
    }
    return out;
}

WsosCertificate parse_wsos_payload(const json& p) {
    WsosCertificate cert;
    cert.lc = get_rat(member(p, "lc", "/payload"), "/payload/lc");
    cert.S = get_poly(member(p, "S", "/payload"), "/payload/S");
    const json& blocks = get_array(member(p, "blocks", "/payload"), "/payload/blocks");
    size_t bi = 0;
    for (const auto& bj : blocks) {
        std::string bp = "/payload/blocks/" + std::to_string(bi);
        WsosBlock blk;
        blk.scale_exp = get_long(member(bj, "scale_exp", bp), bp + "/scale_exp");
        blk.epsilon = get_rat(member(bj, "epsilon", bp), bp + "/epsilon");
        blk.a_eps_d = get_rat(member(bj, "a_eps_d", bp), bp + "/a_eps_d");
        blk.P = get_poly(member(bj, "P", bp), bp + "/P");
        blk.Q = get_poly(member(bj, "Q", bp), bp + "/Q");
        const json& odd = get_array(member(bj, "odd", bp), bp + "/odd");
        size_t ti = 0;
        for (const auto& tj : odd) {
            std::string tp = bp + "/odd/" + std::to_string(ti);
            OddTerm term;
            term.w = get_rat(member(tj, "w", tp), tp + "/w");
            term.sign = static_cast<int>(get_long(member(tj, "sign", tp), tp + "/sign"));
            if (term.sign != 1 && term.sign != -1) fail(tp + "/sign", "expected 1 or -1");
            term.k = get_long(member(tj, "k", tp), tp + "/k");
            blk.odd.push_back(std::move(term));
            ++ti;
        }
        const json& even = get_array(member(bj, "even", bp), bp + "/even");
        ti = 0;
        for (const auto& tj : even) {
            std::string tp = bp + "/even/" + std::to_string(ti);
            EvenTerm term;
            term.w = get_rat(member(tj, "w", tp), tp + "/w");
            term.k = get_long(member(tj, "k", tp), tp + "/k");
            blk.even.push_back(std::move(term));
            ++ti;
        }
        const json& budget = member(bj, "budget", bp);
        std::string gp = bp + "/budget";
        blk.budget.d = get_long(member(budget, "d", gp), gp + "/d");
        blk.budget.tau = get_long(member(budget, "tau", gp), gp + "/tau");
        blk.budget.b_exp = get_long(member(budget, "b_exp", gp), gp + "/b_exp");
        blk.budget.b_cap = get_long(member(budget, "b_cap", gp), gp + "/b_cap");
        blk.budget.kappa = get_long(member(budget, "kappa", gp), gp + "/kappa");
        blk.budget.kappa_cap = get_long(member(budget, "kappa_cap", gp), gp + "/kappa_cap");
        blk.budget.b_capped = get_bool(member(budget, "b_capped", gp), gp + "/b_capped");
        blk.budget.kappa_capped = get_bool(member(budget, "kappa_capped", gp), gp + "/kappa_capped");
        cert.blocks.push_back(std::move(blk));
        ++bi;
    }
    return cert;
}

IntervalCertificate parse_interval_payload(const json& p) {
    IntervalCertificate cert;
    std::string domain = get_string(member(p, "domain", "/payload"), "/payload/domain");
    if (domain == "segment")
        cert.domain = IntervalDomain::segment;
    else if (domain == "halfline")
        cert.domain = IntervalDomain::halfline;
    else
        fail("/payload/domain", "unknown interval domain '" + domain + "'");
    cert.a = get_rat(member(p, "a", "/payload"), "/payload/a");
    cert.b = get_rat(member(p, "b", "/payload"), "/payload/b");
    cert.degree = get_long(member(p, "degree", "/payload"), "/payload/degree");
    cert.even_group = get_squares(p, "even_weights", "even_polys", "/payload");
    cert.odd_group = get_squares(p, "odd_weights", "odd_polys", "/payload");
    return cert;
}

PertCertificate parse_pert_payload(const json& p) {
    PertCertificate cert;
    cert.P = get_poly(member(p, "P", "/payload"), "/payload/P");
    cert.Q = get_poly(member(p, "Q", "/payload"), "/payload/Q");
    cert.lc = get_rat(member(p, "lc", "/payload"), "/payload/lc");
    cert.b_exp = get_long(member(p, "b_exp", "/payload"), "/payload/b_exp");
    cert.lambda = get_long(member(p, "lambda", "/payload"), "/payload/lambda");
    cert.extra = get_squares(p, "extra_weights", "extra_polys", "/payload");
    bool has_u = p.contains("witness_u"), has_v = p.contains("witness_v");
    if (has_u != has_v) fail("/payload/witness_v", "witness_u and witness_v must come together");
    if (has_u)
        cert.squarefree_witness = std::make_pair(get_poly(p["witness_u"], "/payload/witness_u"),
                                                 get_poly(p["witness_v"], "/payload/witness_v"));
    return cert;
}

KarlinDecomposition parse_karlin_payload(const json& p) {
    KarlinDecomposition dec;
    std::string domain = get_string(member(p, "domain", "/payload"), "/payload/domain");
    if (domain == "R")
        dec.domain = KarlinDomain::real_line;
    else if (domain == "halfline")
        dec.domain = KarlinDomain::halfline;
    else if (domain == "segment")
        dec.domain = KarlinDomain::segment;
    else
        fail("/payload/domain", "unknown Karlin domain '" + domain + "'");
    dec.a = get_rat(member(p, "a", "/payload"), "/payload/a");
    dec.b = get_rat(member(p, "b", "/payload"), "/payload/b");
    dec.P = get_poly(member(p, "P", "/payload"), "/payload/P");
    dec.Q = get_poly(member(p, "Q", "/payload"), "/payload/Q");
    dec.alpha = get_rat(member(p, "alpha", "/payload"), "/payload/alpha");
    dec.beta = get_rat(member(p, "beta", "/payload"), "/payload/beta");
    dec.karlin_x = get_dyadic_list(member(p, "karlin_x", "/payload"), "/payload/karlin_x");
    dec.karlin_y = get_dyadic_list(member(p, "karlin_y", "/payload"), "/payload/karlin_y");
    dec.precision = get_long(member(p, "precision", "/payload"), "/payload/precision");
    dec.parity_swapped = get_bool(member(p, "parity_swapped", "/payload"), "/payload/parity_swapped");
    return dec;
}

NegativityWitness parse_witness_payload(const json& p) {
    NegativityWitness w;
    w.t = get_rat(member(p, "t", "/payload"), "/payload/t");
    w.value = get_rat(member(p, "value", "/payload"), "/payload/value");
    return w;
}

// ---------- verification helpers ----------

VerifyResult reject(std::string reason) { return {false, std::move(reason)}; }

// First index where the polynomials differ, or -1.
long first_mismatch(const RatPoly& got, const RatPoly& want) {
    long top = std::max(got.degree(), want.degree());
    for (long k = 0; k <= top; ++k)
        if (!(got.coeff(static_cast<size_t>(k)) == want.coeff(static_cast<size_t>(k))))
            return k;
    return -1;
}

VerifyResult verify_wsos_R(const RatPoly& a, const WsosCertificate& cert) {
    if (cert.lc < 0) return reject("negative-weight at lc");
    std::vector<WeightedSquare> flat = flatten_certificate(cert);
    for (size_t i = 0; i < flat.size(); ++i)
        if (flat[i].w < 0) return reject("negative-weight at index " + std::to_string(i));
    long k = first_mismatch(expand_certificate(cert), a);
    if (k >= 0) return reject("coefficient mismatch at k = " + std::to_string(k));
    return {true, ""};
}

VerifyResult verify_wsos_interval(const RatPoly& a, const IntervalCertificate& cert) {
    if (cert.domain == IntervalDomain::segment && !(cert.a < cert.b))
        return reject("empty segment");
    for (size_t i = 0; i < cert.even_group.size(); ++i)
        if (cert.even_group[i].w < 0)
            return reject("negative-weight at even_weights/" + std::to_string(i));
    for (size_t i = 0; i < cert.odd_group.size(); ++i)
        if (cert.odd_group[i].w < 0)
            return reject("negative-weight at odd_weights/" + std::to_string(i));
    long k = first_mismatch(expand_interval_certificate(cert), a);
    if (k >= 0) return reject("coefficient mismatch at k = " + std::to_string(k));
    return {true, ""};
}

VerifyResult verify_pert(const RatPoly& a, const PertCertificate& cert) {
    PertCheck check = check_pert_cert(a, cert);
    if (!check.accepted) {
        std::string reason = to_string(check.reason);
        if (!check.detail.empty()) reason += " (" + check.detail + ")";
        return reject(std::move(reason));
    }
    if (cert.squarefree_witness) {
        const auto& [u, v] = *cert.squarefree_witness;
        if (!((u * a) + (v * a.derivative()) == RatPoly::constant(Rat(1))))
            return reject("square-free witness identity fails");
    }
    return {true, ""};
}

VerifyResult verify_karlin(const RatPoly& a, const KarlinDecomposition& dec) {
    if (dec.precision < 8) return reject("invalid precision");
    if (!(dec.alpha > 0)) return reject("nonpositive Karlin weight alpha");
    if (dec.beta < 0) return reject("negative Karlin weight beta");
    if (dec.domain == KarlinDomain::segment && !(dec.a < dec.b)) return reject("empty segment");

    struct Pt {
        Rat v;
        bool is_x;
    };
    std::vector<Pt> merged;
    for (const Dyadic& p : dec.karlin_x) merged.push_back({p.to_rational(), true});
    for (const Dyadic& p : dec.karlin_y) merged.push_back({p.to_rational(), false});
    std::sort(merged.begin(), merged.end(), [](const Pt& l, const Pt& r) { return l.v < r.v; });
    for (const Pt& p : merged) {
        if (dec.domain == KarlinDomain::halfline && !(p.v > 0))
            return reject("Karlin point outside the domain");
        if (dec.domain == KarlinDomain::segment && !(dec.a < p.v && p.v < dec.b))
            return reject("Karlin point outside the domain");
    }
    bool x_first = true;
    if (dec.domain == KarlinDomain::segment && dec.karlin_x.size() == dec.karlin_y.size())
        x_first = false; // odd degree on a segment starts with a y-point
    if (dec.karlin_x.size() < dec.karlin_y.size())
        return reject("Karlin points do not alternate");
    if (dec.domain == KarlinDomain::real_line && !merged.empty() &&
        dec.karlin_x.size() != dec.karlin_y.size() + 1)
        return reject("Karlin points do not alternate");
    for (size_t i = 0; i < merged.size(); ++i) {
        if (i + 1 < merged.size() && !(merged[i].v < merged[i + 1].v))
            return reject("Karlin points collide");
        bool want_x = x_first ? (i % 2 == 0) : (i % 2 == 1);
        if (merged[i].is_x != want_x) return reject("Karlin points do not alternate");
    }

    Rat residual = (a - karlin_reconstruction(dec)).inf_norm();
    if (!(residual <= pow2_rat(-(dec.precision / 2))))
        return reject("reconstruction residual exceeds 2^(-prec/2)");
    return {true, ""};
}

VerifyResult verify_witness(const RatPoly& a, const NegativityWitness& w) {
    if (!(w.value < 0)) return reject("witness value is not negative");
    if (!(a.eval(w.t) == w.value)) return reject("witness evaluation mismatch");
    return {true, ""};
}

} // namespace

CertificateEnvelope envelope_for(const RatPoly& a, const WsosCertificate& cert) {
    long b_exp = 0, kappa = 0;
    for (const WsosBlock& blk : cert.blocks) {
        b_exp = std::max(b_exp, blk.budget.b_exp);
        kappa = std::max(kappa, blk.budget.kappa);
    }
    return make_envelope(a, "wsos-R", cert, {{"b_exp", b_exp}, {"kappa", kappa}});
}

CertificateEnvelope envelope_for(const RatPoly& a, const IntervalCertificate& cert) {
    return make_envelope(a, "wsos-interval", cert, {});
}

CertificateEnvelope envelope_for(const RatPoly& a, const PertCertificate& cert) {
    return make_envelope(a, "pert-sos", cert, {{"b_exp", cert.b_exp}, {"lambda", cert.lambda}});
}

CertificateEnvelope envelope_for(const RatPoly& a, const KarlinDecomposition& dec) {
    return make_envelope(a, "karlin", dec, {{"prec", dec.precision}});
}

CertificateEnvelope envelope_for(const RatPoly& a, const NegativityWitness& w) {
    return make_envelope(a, "witness", w, {});
}

std::string serialize(const CertificateEnvelope& env) {
    json params = json::object();
    for (const auto& [key, value] : env.meta.params) params[key] = value;
    json meta = {{"poly_hash", env.meta.poly_hash},
                 {"tool", env.meta.tool},
                 {"version", env.meta.version},
                 {"params", params}};
    json payload = std::visit([](const auto& body) { return payload_json(body); }, env.payload);
    json doc = {{"kind", env.kind}, {"meta", meta}, {"payload", payload}};
    return doc.dump();
}

CertificateEnvelope deserialize(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what(), "/");
    }
    CertificateEnvelope env;
    env.kind = get_string(member(doc, "kind", ""), "/kind");
    const json& meta = member(doc, "meta", "");
    env.meta.poly_hash = get_string(member(meta, "poly_hash", "/meta"), "/meta/poly_hash");
    env.meta.tool = get_string(member(meta, "tool", "/meta"), "/meta/tool");
    env.meta.version = get_string(member(meta, "version", "/meta"), "/meta/version");
    const json& params = member(meta, "params", "/meta");
    if (!params.is_object()) fail("/meta/params", "expected an object");
    for (const auto& [key, value] : params.items())
        env.meta.params[key] = get_long(value, "/meta/params/" + key);
    const json& payload = member(doc, "payload", "");
    if (env.kind == "wsos-R")
        env.payload = parse_wsos_payload(payload);
    else if (env.kind == "wsos-interval")
        env.payload = parse_interval_payload(payload);
    else if (env.kind == "pert-sos")
        env.payload = parse_pert_payload(payload);
    else if (env.kind == "karlin")
        env.payload = parse_karlin_payload(payload);
    else if (env.kind == "witness")
        env.payload = parse_witness_payload(payload);
    else
        fail("/kind", "unknown certificate kind '" + env.kind + "'");
    return env;
}

bool operator==(const CertificateEnvelope& l, const CertificateEnvelope& r) {
    return serialize(l) == serialize(r);
}

VerifyResult verify(const RatPoly& a, const CertificateEnvelope& env) {
    VerifyResult semantic;
    if (env.kind == "wsos-R" && std::holds_alternative<WsosCertificate>(env.payload))
        semantic = verify_wsos_R(a, std::get<WsosCertificate>(env.payload));
    else if (env.kind == "wsos-interval" && std::holds_alternative<IntervalCertificate>(env.payload))
        semantic = verify_wsos_interval(a, std::get<IntervalCertificate>(env.payload));
    else if (env.kind == "pert-sos" && std::holds_alternative<PertCertificate>(env.payload))
        semantic = verify_pert(a, std::get<PertCertificate>(env.payload));
    else if (env.kind == "karlin" && std::holds_alternative<KarlinDecomposition>(env.payload))
        semantic = verify_karlin(a, std::get<KarlinDecomposition>(env.payload));
    else if (env.kind == "witness" && std::holds_alternative<NegativityWitness>(env.payload))
        semantic = verify_witness(a, std::get<NegativityWitness>(env.payload));
    else
        return reject("kind does not match payload");
    if (!semantic.accepted) return semantic;
    // The content hash comes after the semantic checks so stale certificates
    // for a *different* polynomial report the first concrete disagreement.
    if (env.meta.poly_hash != poly_hash(a)) return reject("polynomial hash mismatch");
    return semantic;
}

} // namespace upos
