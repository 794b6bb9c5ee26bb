#pragma once

// Reconstruction of polynomials from approximate (dyadic) roots. Both
// operations are exact ring computations over dyadic complex numbers: the
// only error relative to the target polynomial is the one already present in
// the root approximations.

#include <utility>
#include <vector>

#include "upos/arith.hpp"
#include "upos/parallel.hpp"
#include "upos/poly.hpp"

namespace upos {

// Exactly lc * prod (x - z_i), for a conjugate-closed root multiset.
// Throws imaginary_residue_error if the expanded product has a nonzero
// imaginary part (input was not conjugate-closed).
RatPoly product_tree(const std::vector<DyadicComplex>& roots, const Rat& lc,
                     exec::Policy policy = exec::default_policy());

struct PQPair {
    RatPoly P;     // monic, degree = number of pairs
    RatPoly Q;     // degree <= deg(P) - 1
    Rat lc_factor; // carried along: lc * (P^2 + Q^2) is the real product
};

// P + iQ = prod (x - gamma_j + i*delta_j), exact over dyadic coefficients.
// Each (gamma_j, delta_j) with delta_j > 0 stands for the conjugate root pair
// gamma_j +- i*delta_j of the real polynomial lc*(P^2 + Q^2).
PQPair split_pq(const std::vector<std::pair<Dyadic, Dyadic>>& upper_pairs, const Rat& lc,
                exec::Policy policy = exec::default_policy());

} // namespace upos
