#pragma once

// Weighted sum-of-squares certificates of positivity over R for univariate
// rational polynomials.
//
// Pipeline for one square-free factor G (even degree, no real roots):
//   1. scale G so its leading coefficient lies in (1/2, 1];
//   2. pick the largest admissible perturbation eps = 2^-b such that
//      A_eps = G_scaled - eps*M stays positive (M = 1 + x^2 + ... + x^d);
//   3. approximate the (strictly complex) roots of A_eps, form
//      P + iQ over the upper-half-plane representatives, and let
//      B = A_eps - a_d(P^2 + Q^2) be the exact reconstruction residual;
//   4. once eps >= |b_{2k+1}|/4 - b_{2k} + |b_{2k-1}| holds for all k, the
//      residual plus eps*M is absorbed into explicit squares with
//      nonnegative weights, giving an exact identity for G.
//
// Full inputs are preprocessed (square-free factorization, even/odd
// multiplicity split) so that arbitrary nonnegative polynomials reduce to
// certified factors times a square cofactor.

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "upos/arith.hpp"
#include "upos/poly.hpp"
#include "upos/roots.hpp"

namespace upos {

// M(x) = 1 + x^2 + ... + x^(2m).
RatPoly build_M(long m);

// Worst-case exponents; the adaptive searches must succeed at or before
// these (lg d = ceil(log2(max(d, 2)))).
long epsilon_cap_exponent(long d, long tau); // 5*d*tau + 9*d*lg(d) + 12
long kappa_cap_exponent(long d, long tau);   // 5*d*tau + 40*d*lg(d)

struct PrecisionBudget {
    long d = 0;   // degree of the certified (scaled) factor
    long tau = 0; // coefficient bitsize of the scaled factor
    long b_exp = 0;
    long b_cap = 0;
    long kappa = 0;
    long kappa_cap = 0;
    bool b_capped = false; // adaptive search had to go all the way
    bool kappa_capped = false;
};

struct OddTerm { // w * (x^(k+1) + sign * x^k / 2)^2
    Rat w;
    int sign = 1;
    long k = 0;
};

struct EvenTerm { // w * x^(2k)
    Rat w;
    long k = 0;
};

// Certificate of one square-free factor G with lc(G) > 0:
//   2^-scale_exp * G = a_eps_d*(P^2 + Q^2) + sum odd + sum even.
// Zero-weight terms are dropped, so the summand count is at most d + 3.
struct WsosBlock {
    long scale_exp = 0;
    Rat epsilon;
    Rat a_eps_d;
    RatPoly P, Q;
    std::vector<OddTerm> odd;
    std::vector<EvenTerm> even;
    PrecisionBudget budget;
};

// Full certificate: A = lc * S^2 * prod over blocks of their factors.
struct WsosCertificate {
    Rat lc;    // positive (zero only for the zero polynomial)
    RatPoly S; // monic square cofactor from the even multiplicities
    std::vector<WsosBlock> blocks;
};

struct NegativityWitness {
    Rat t;
    Rat value; // A(t), exactly; always < 0
};

using CertifyResult = std::variant<WsosCertificate, NegativityWitness>;

// (epsilon, b_exp) with epsilon = 2^-b_exp the first admissible perturbation:
// the search starts at b = 3 and increments b until A - eps*M is positive
// over R (checked exactly via Sturm counting; sample-point evaluations are
// used only to skip provably inadmissible b). Pre: A square-free, even
// degree, lc in [1/2, 1]. Throws not_positive_error if A itself is not
// positive; internal_error past the worst-case exponent.
std::pair<Rat, long> choose_epsilon(const RatPoly& a);

struct KappaResult {
    ConjugatePairSet roots;
    RatPoly P, Q;   // split over the upper-half-plane pairs
    RatPoly B;      // exact residual A_eps - a_eps_d*(P^2 + Q^2)
    long kappa = 0; // achieved
    bool capped = false;
};

// Refine roots of A_eps at increasing precision (start b_exp + 64, double,
// clamp at the worst case) until the residual satisfies the weight
// inequality eps >= |b_{2k+1}|/4 - b_{2k} + |b_{2k-1}| for all k.
KappaResult choose_kappa_and_roots(const RatPoly& a_eps, const Rat& epsilon);

// Tail weights absorbing B + eps*M, including zero-weight entries:
//   odd[k]  = (|b_{2k+1}|, sign(b_{2k+1}), k)          for k in [0, m-1]
//   even[k] = eps + b_{2k} - |b_{2k-1}| - |b_{2k+1}|/4 for k in [0, m]
// Pre: the weight inequality holds (else internal_error).
std::pair<std::vector<OddTerm>, std::vector<EvenTerm>> assemble_tail(const RatPoly& B,
                                                                     const Rat& epsilon, long m);

// Run the per-factor pipeline. Pre: G square-free, even degree, lc(G) > 0,
// no real roots.
WsosBlock certify_factor(const RatPoly& g);

// Certificate or witness, exactly one. The certificate expands exactly to A.
CertifyResult certify_positive_R(const RatPoly& a);

// A rational t with A(t) < 0 exactly, when one exists; nullopt iff A >= 0
// everywhere on R.
std::optional<Rat> find_witness(const RatPoly& a);

// Exact expansions (used by verification and tests).
RatPoly expand_block(const WsosBlock& block);
RatPoly expand_certificate(const WsosCertificate& cert);

// Number of squares in a block (P, Q and the nonzero tail terms).
long summand_count(const WsosBlock& block);

struct WeightedSquare {
    Rat w; // >= 0
    RatPoly s;
};

// The certificate as one flat list: A = sum w_i * s_i^2.
std::vector<WeightedSquare> flatten_certificate(const WsosCertificate& cert);

} // namespace upos
