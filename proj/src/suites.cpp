#include "upos/suites.hpp"

#include <random>

#include "upos/arith.hpp"
#include "upos/errors.hpp"
#include "upos/squarefree.hpp"
#include "upos/sturm.hpp"

namespace upos {

namespace {

// Uniform draw from [-2^bits, 2^bits]. The modulo bias is irrelevant here
// (the corpora only need determinism and roughly full-width coefficients).
Rat draw_coeff(std::mt19937_64& rng, long bits) {
    if (bits < 0 || bits > 62) throw domain_error("coefficient bitsize out of range");
    unsigned long long span = (1ULL << (bits + 1)) + 1ULL;
    unsigned long long raw = rng() % span;
    Int value(static_cast<unsigned long>(raw));
    value -= Int(1) << bits;
    return Rat(value);
}

RatPoly draw_poly(std::mt19937_64& rng, long degree, long bits) {
    std::vector<Rat> c(static_cast<size_t>(degree) + 1);
    for (long k = 0; k < degree; ++k) c[static_cast<size_t>(k)] = draw_coeff(rng, bits);
    Rat top = draw_coeff(rng, bits);
    while (top == 0) top = draw_coeff(rng, bits);
    c[static_cast<size_t>(degree)] = top;
    return RatPoly(std::move(c));
}

} // namespace

RatPoly random_sos(long d, long nu, long coeff_bits, std::uint64_t seed) {
    if (d < 2 || d % 2 != 0) throw domain_error("random_sos needs an even degree >= 2");
    if (nu < 1) throw domain_error("random_sos needs nu >= 1");
    std::mt19937_64 rng(seed);
    RatPoly total;
    for (long i = 0; i < nu; ++i) {
        RatPoly f = draw_poly(rng, d / 2, coeff_bits);
        total = total + (f * f);
    }
    return total;
}

RatPoly wilkinson(long degree) {
    if (degree < 2 || degree % 2 != 0) throw domain_error("wilkinson needs an even degree >= 2");
    long n = degree / 2;
    RatPoly w = RatPoly::constant(Rat(1));
    for (long i = 1; i <= n; ++i) w = w * (RatPoly::x() - RatPoly::constant(Rat(i)));
    RatPoly dent = RatPoly::monomial(Rat(1) / Rat(11237), 2);
    return (w * w) - dent + RatPoly::constant(Rat(1));
}

RatPoly forced_negative(long degree, long coeff_bits, std::uint64_t seed) {
    if (degree < 1) throw domain_error("forced_negative needs degree >= 1");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 4096; ++attempt) {
        RatPoly f = draw_poly(rng, degree, coeff_bits);
        if (is_square_free(f) && sturm_count_real_roots(f) >= 1) return f;
    }
    throw internal_error("could not draw a square-free polynomial with a real root");
}

long input_bitsize(const RatPoly& a) {
    if (a.is_zero()) return 0;
    Rat norm = a.inf_norm();
    if (norm < 2) return 1;
    return floor_lg(norm);
}

long output_bitsize(const WsosCertificate& cert) {
    long total = 0;
    for (const WsosBlock& blk : cert.blocks) {
        for (long k = 0; k <= blk.P.degree(); ++k)
            total += static_cast<long>(bitsize(blk.P.coeff(static_cast<size_t>(k))));
        for (long k = 0; k <= blk.Q.degree(); ++k)
            total += static_cast<long>(bitsize(blk.Q.coeff(static_cast<size_t>(k))));
    }
    return total;
}

long total_summands(const WsosCertificate& cert) {
    long total = 0;
    for (const WsosBlock& blk : cert.blocks) total += summand_count(blk);
    return total;
}

LinFit least_squares_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw domain_error("least_squares_fit needs matching nonempty samples");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinFit fit;
    if (sxx == 0) {
        fit.intercept = my;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    fit.r2 = (ss_tot == 0) ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

} // namespace upos
