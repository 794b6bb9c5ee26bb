#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upos/poly.hpp"
#include "upos/usos.hpp"

namespace upos {

// Perturbed two-square certificates: a rational sum of squares B so close to A
// (coefficientwise) that the bound ||A - B||_inf < 2^-b_exp alone certifies
// A >= 0, with the threshold exponent depending only on deg A and the
// coefficient bitsize. No identity has to hold exactly; the checker recomputes
// the threshold from A and measures the residual in exact arithmetic.

// Threshold exponent 4 d tau + 16 d lg d + 1 (the +1 turns the strict bound
// into ">="). Requires d even, d >= 2; odd degrees are not covered.
long pert_threshold(long d, long tau);

// Root-refinement precision 9 d tau + 60 d lg d that makes the two-square
// construction land below the threshold.
long pert_lambda(long d, long tau);

struct PertCertificate {
    RatPoly P; // monic, degree d/2
    RatPoly Q; // degree d/2 - 1
    Rat lc;    // leading coefficient of A
    long b_exp = 0;  // claimed threshold exponent
    long lambda = 0; // root precision used to build P, Q
    // Optional Bezout pair (u, v) with u*A + v*A' = 1: an exact witness that A
    // is square-free, upgrading "nonnegative" to "positive".
    std::optional<std::pair<RatPoly, RatPoly>> squarefree_witness;
    // Extra weighted squares: never produced here, but the checker accepts the
    // generalized form B = lc (P^2 + Q^2) + sum w_i s_i^2 with w_i >= 0.
    std::vector<WeightedSquare> extra;
};

// Build the certificate for A (square-free, even degree, positive over R,
// lc > 0). Throws not_positive_error / not_square_free_error / domain_error
// (odd or non-positive degree). When with_witness is set, bundles the Bezout
// cofactors of gcd(A, A') = 1.
PertCertificate build_pert_cert(const RatPoly& a, bool with_witness = false);

enum class PertReject {
    none,
    threshold_too_small, // stored b_exp does not exceed the recomputed 4 d tau + 16 d lg d
    residual_too_large,  // ||A - B||_inf >= 2^-b_exp
    degree_mismatch,     // body degree differs from deg A, or deg A unsupported
    negative_weight,     // a generalized-form weight is negative
};

std::string to_string(PertReject r);

struct PertCheck {
    bool accepted = false;
    PertReject reason = PertReject::none;
    std::string detail;
};

// Exact check: accept iff b_exp clears the threshold recomputed from A alone
// and ||A - body||_inf < 2^-b_exp, where body = lc (P^2 + Q^2) + extras.
// The stored b_exp is never trusted as a threshold, only as the claim.
PertCheck check_pert_cert(const RatPoly& a, const PertCertificate& cert);

// The certificate body lc (P^2 + Q^2) + sum w_i s_i^2, exactly.
RatPoly expand_pert_body(const PertCertificate& cert);

// Extended Euclid over Q[x]: (u, v) with u a + v b = gcd (monic). Throws
// domain_error if both inputs are zero.
std::pair<RatPoly, RatPoly> bezout_pair(const RatPoly& a, const RatPoly& b);

} // namespace upos
