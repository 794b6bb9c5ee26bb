#include "upos/pertsos.hpp"

#include "upos/errors.hpp"
#include "upos/roots.hpp"
#include "upos/fanin.hpp"
#include "upos/squarefree.hpp"
#include "upos/sturm.hpp"

namespace upos {

namespace {

void require_even_degree(long d) {
    if (d < 2 || d % 2 != 0)
        throw domain_error("perturbed certificates require even degree >= 2");
}

} // namespace

long pert_threshold(long d, long tau) {
    require_even_degree(d);
    return 4 * d * tau + 16 * d * lg_of_degree(d) + 1;
}

long pert_lambda(long d, long tau) {
    require_even_degree(d);
    return 9 * d * tau + 60 * d * lg_of_degree(d);
}

RatPoly expand_pert_body(const PertCertificate& cert) {
    RatPoly body = ((cert.P * cert.P) + (cert.Q * cert.Q)).scaled(cert.lc);
    for (const WeightedSquare& ws : cert.extra)
        body = body + (ws.s * ws.s).scaled(ws.w);
    return body;
}

std::pair<RatPoly, RatPoly> bezout_pair(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() && b.is_zero())
        throw domain_error("Bezout pair of two zero polynomials");
    RatPoly r0 = a, r1 = b;
    RatPoly u0 = RatPoly::constant(Rat(1)), u1;
    RatPoly v0, v1 = RatPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        RatPoly u2 = u0 - (q * u1);
        RatPoly v2 = v0 - (q * v1);
        r0 = r1; r1 = r;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    Rat s = Rat(1) / r0.lc(); // normalize the gcd to monic
    return {u0.scaled(s), v0.scaled(s)};
}

PertCertificate build_pert_cert(const RatPoly& a, bool with_witness) {
    long d = a.degree();
    require_even_degree(d);
    if (a.lc() <= 0) throw not_positive_error("negative at infinity: leading coefficient <= 0");
    if (!is_square_free(a)) throw not_square_free_error("input has a repeated factor");
    if (sturm_count_real_roots(a) != 0)
        throw not_positive_error("polynomial has a real root, so it is not strictly positive");

    long tau_a = a.tau();
    PertCertificate cert;
    cert.lc = a.lc();
    cert.b_exp = pert_threshold(d, tau_a);
    cert.lambda = pert_lambda(d, tau_a);

    // The prescribed lambda makes the two-square residual land below the
    // threshold; the loop is a safety net, not an expected path.
    Rat bound = pow2_rat(-cert.b_exp);
    for (long lambda = cert.lambda;; lambda *= 2) {
        ConjugatePairSet roots = refine_all_roots(a, lambda);
        if (!roots.real_roots.empty())
            throw internal_error("real root surfaced after the positivity check");
        PQPair pq = split_pq(roots.pairs, a.lc());
        cert.P = pq.P;
        cert.Q = pq.Q;
        cert.lambda = lambda;
        RatPoly body = ((cert.P * cert.P) + (cert.Q * cert.Q)).scaled(cert.lc);
        if ((a - body).inf_norm() < bound) break;
        if (lambda > 64 * pert_lambda(d, tau_a))
            throw internal_error("two-square residual will not fit below the threshold");
    }

    if (with_witness) {
        auto [u, v] = bezout_pair(a, a.derivative());
        // gcd(A, A') is the constant 1 for a square-free A, so u A + v A' = 1.
        RatPoly check = (u * a) + (v * a.derivative());
        if (!(check == RatPoly::constant(Rat(1))))
            throw internal_error("Bezout pair fails to witness square-freeness");
        cert.squarefree_witness = std::make_pair(std::move(u), std::move(v));
    }
    return cert;
}

std::string to_string(PertReject r) {
    switch (r) {
        case PertReject::none: return "none";
        case PertReject::threshold_too_small: return "threshold-too-small";
        case PertReject::residual_too_large: return "residual-too-large";
        case PertReject::degree_mismatch: return "degree-mismatch";
        case PertReject::negative_weight: return "negative-weight";
    }
    return "unknown";
}

PertCheck check_pert_cert(const RatPoly& a, const PertCertificate& cert) {
    long d = a.degree();
    if (d < 2 || d % 2 != 0)
        return {false, PertReject::degree_mismatch,
                "input degree " + std::to_string(d) + " is not an even degree >= 2"};
    if (cert.lc < 0)
        return {false, PertReject::negative_weight, "leading weight lc is negative"};
    for (size_t i = 0; i < cert.extra.size(); ++i)
        if (cert.extra[i].w < 0)
            return {false, PertReject::negative_weight,
                    "extra weight at index " + std::to_string(i) + " is negative"};
    RatPoly body = expand_pert_body(cert);
    if (body.degree() != d)
        return {false, PertReject::degree_mismatch,
                "body degree " + std::to_string(body.degree()) + " vs input degree " + std::to_string(d)};
    long thr = pert_threshold(d, a.tau());
    if (cert.b_exp < thr)
        return {false, PertReject::threshold_too_small,
                "claimed exponent " + std::to_string(cert.b_exp) + " is below the recomputed threshold " +
                    std::to_string(thr)};
    Rat residual = (a - body).inf_norm();
    if (!(residual < pow2_rat(-cert.b_exp)))
        return {false, PertReject::residual_too_large,
                "residual norm is not below 2^-" + std::to_string(cert.b_exp)};
    return {true, PertReject::none, ""};
}

} // namespace upos
