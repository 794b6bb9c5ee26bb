#include "upos/interval.hpp"

#include <utility>

#include "upos/errors.hpp"

namespace upos {

RatPoly compose_linear_fractional(const RatPoly& f, long d, const RatPoly& p, const RatPoly& q) {
    if (d < f.degree())
        throw domain_error("linear-fractional substitution needs d >= deg f");
    if (f.is_zero()) return RatPoly();
    long n = f.degree();
    std::vector<RatPoly> qpow(static_cast<size_t>(n) + 1);
    qpow[0] = RatPoly::constant(Rat(1));
    for (long i = 1; i <= n; ++i)
        qpow[static_cast<size_t>(i)] = qpow[static_cast<size_t>(i - 1)] * q;
    // Horner in p: after processing index k the accumulator holds
    // sum_{j >= k} f_j p^(j-k) q^(n-j).
    RatPoly acc = RatPoly::constant(f.coeff(static_cast<size_t>(n)));
    for (long k = n - 1; k >= 0; --k)
        acc = (acc * p) + qpow[static_cast<size_t>(n - k)].scaled(f.coeff(static_cast<size_t>(k)));
    for (long k = n; k < d; ++k) acc = (acc * q);
    return acc;
}

RatPoly transform_to_line(const RatPoly& a_poly, long d, const Rat& a, const Rat& b) {
    if (!(a < b)) throw domain_error("empty segment: need a < b");
    if (d < a_poly.degree())
        throw domain_error("segment transform needs d >= deg A");
    // p(y) = a + b y^2, q(y) = 1 + y^2.
    RatPoly p = RatPoly::constant(a) + RatPoly::monomial(b, 2);
    RatPoly q = RatPoly::constant(Rat(1)) + RatPoly::monomial(Rat(1), 2);
    return compose_linear_fractional(a_poly, d, p, q);
}

RatPoly transform_halfline(const RatPoly& a_poly) { return a_poly.subst_x_squared(); }

RatPoly goursat(const RatPoly& a_poly, long d) {
    if (d < a_poly.degree())
        throw domain_error("Goursat transform needs d >= deg A");
    RatPoly p = RatPoly::constant(Rat(1)) - RatPoly::x();
    RatPoly q = RatPoly::constant(Rat(1)) + RatPoly::x();
    return compose_linear_fractional(a_poly, d, p, q);
}

namespace {

// s(y) = e(y^2) + y * o(y^2); returns (e, o).
std::pair<RatPoly, RatPoly> split_even_odd(const RatPoly& s) {
    std::vector<Rat> e, o;
    for (long k = 0; k <= s.degree(); ++k) {
        const Rat& c = s.coeff(static_cast<size_t>(k));
        if (k % 2 == 0)
            e.push_back(c);
        else
            o.push_back(c);
    }
    return {RatPoly(std::move(e)), RatPoly(std::move(o))};
}

// sum_i s_i (x - a)^i (b - x)^(k - i): the polynomial (b - x)^k s((x-a)/(b-x)).
// Pre: deg s <= k (guaranteed by the degree accounting of the recovery; the
// guard protects against a certificate that violates it).
RatPoly compose_boundary(const RatPoly& s, long k, const Rat& a, const Rat& b) {
    if (s.degree() > k)
        throw internal_error("boundary composition would not be a polynomial");
    if (s.is_zero()) return RatPoly();
    long n = s.degree();
    RatPoly xa = RatPoly::x() - RatPoly::constant(a);
    RatPoly bx = RatPoly::constant(b) - RatPoly::x();
    std::vector<RatPoly> bxpow(static_cast<size_t>(n) + 1);
    bxpow[0] = RatPoly::constant(Rat(1));
    for (long i = 1; i <= n; ++i)
        bxpow[static_cast<size_t>(i)] = bxpow[static_cast<size_t>(i - 1)] * bx;
    RatPoly acc = RatPoly::constant(s.coeff(static_cast<size_t>(n)));
    for (long i = n - 1; i >= 0; --i)
        acc = (acc * xa) + bxpow[static_cast<size_t>(n - i)].scaled(s.coeff(static_cast<size_t>(i)));
    for (long i = n; i < k; ++i) acc = (acc * bx);
    return acc;
}

[[noreturn]] void throw_domain_witness(const std::string& name, const RatPoly& a_poly, const Rat& t) {
    Rat v = a_poly.eval(t);
    if (!(v < 0))
        throw internal_error("mapped witness fails to evaluate negative");
    throw not_positive_on_domain_error(name, t, v);
}

} // namespace

std::pair<RatPoly, RatPoly> boundary_multipliers(const IntervalCertificate& cert) {
    RatPoly one = RatPoly::constant(Rat(1));
    if (cert.domain == IntervalDomain::halfline) return {one, RatPoly::x()};
    RatPoly xa = RatPoly::x() - RatPoly::constant(cert.a);
    RatPoly bx = RatPoly::constant(cert.b) - RatPoly::x();
    if (cert.degree % 2 == 0) return {one, (xa * bx)};
    return {bx, xa};
}

RatPoly expand_interval_certificate(const IntervalCertificate& cert) {
    auto [m_even, m_odd] = boundary_multipliers(cert);
    RatPoly total;
    for (const WeightedSquare& ws : cert.even_group)
        total = total + (m_even * (ws.s * ws.s)).scaled(ws.w);
    for (const WeightedSquare& ws : cert.odd_group)
        total = total + (m_odd * (ws.s * ws.s)).scaled(ws.w);
    return total;
}

IntervalCertificate certify_halfline(const RatPoly& a_poly) {
    IntervalCertificate cert;
    cert.domain = IntervalDomain::halfline;
    cert.a = Rat(0);
    cert.b = Rat(0);
    if (a_poly.is_zero()) return cert;
    cert.degree = a_poly.degree();

    CertifyResult res = certify_positive_R(transform_halfline(a_poly));
    if (std::holds_alternative<NegativityWitness>(res)) {
        // A(y0^2) < 0, so t = y0^2 >= 0 lies on the half-line itself.
        const auto& w = std::get<NegativityWitness>(res);
        throw_domain_witness("half-line", a_poly, w.t * w.t);
    }

    // A(y^2) = sum w s(y)^2. Splitting s(y) = e(y^2) + y o(y^2), the odd part
    // of the aggregate vanishes (the left side is even in y), leaving
    // A(u) = sum w e(u)^2 + u * sum w o(u)^2.
    for (WeightedSquare& ws : flatten_certificate(std::get<WsosCertificate>(res))) {
        if (ws.w == 0) continue;
        auto [e, o] = split_even_odd(ws.s);
        if (!e.is_zero()) cert.even_group.push_back({ws.w, std::move(e)});
        if (!o.is_zero()) cert.odd_group.push_back({ws.w, std::move(o)});
    }
    if (!(expand_interval_certificate(cert) == a_poly))
        throw internal_error("half-line certificate fails to expand to the input");
    return cert;
}

IntervalCertificate certify_interval(const RatPoly& a_poly, const Rat& a, const Rat& b) {
    if (!(a < b)) throw domain_error("empty segment: need a < b");
    IntervalCertificate cert;
    cert.domain = IntervalDomain::segment;
    cert.a = a;
    cert.b = b;
    if (a_poly.is_zero()) return cert;
    long d = a_poly.degree();
    cert.degree = d;

    CertifyResult res = certify_positive_R(transform_to_line(a_poly, d, a, b));
    if (std::holds_alternative<NegativityWitness>(res)) {
        // y0 maps to t = (a + b y0^2)/(1 + y0^2) in [a, b); A(t) differs from
        // the transformed value only by the positive factor (1 + y0^2)^d.
        const auto& w = std::get<NegativityWitness>(res);
        Rat y2 = w.t * w.t;
        Rat t = (a + b * y2) / (Rat(1) + y2);
        throw_domain_witness("segment", a_poly, t);
    }

    // Write the transformed polynomial as C(y^2); then with u = (x-a)/(b-x)
    //   A(x) = (b - x)^d C(u) / (b - a)^d,
    // and distributing (b - x)^d over each summand w (e(u)^2 + u o(u)^2) of C
    // turns it into boundary-multiplied squares with half-exponents
    //   d even: (d/2, d/2 - 1),   d odd: ((d-1)/2, (d-1)/2).
    long half_e = (d % 2 == 0) ? d / 2 : (d - 1) / 2;
    long half_o = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
    Rat span_pow(1);
    for (long i = 0; i < d; ++i) span_pow *= b - a;
    Rat w_scale = Rat(1) / span_pow;
    for (WeightedSquare& ws : flatten_certificate(std::get<WsosCertificate>(res))) {
        if (ws.w == 0) continue;
        auto [e, o] = split_even_odd(ws.s);
        if (!e.is_zero()) cert.even_group.push_back({ws.w * w_scale, compose_boundary(e, half_e, a, b)});
        if (!o.is_zero()) cert.odd_group.push_back({ws.w * w_scale, compose_boundary(o, half_o, a, b)});
    }
    if (!(expand_interval_certificate(cert) == a_poly))
        throw internal_error("segment certificate fails to expand to the input");
    return cert;
}

} // namespace upos
