#pragma once

// Square-free decomposition over Q: gcds via a primitive pseudo-remainder
// sequence on integer polynomials, Yun's algorithm on top.

#include <utility>
#include <vector>

#include "upos/poly.hpp"

namespace upos {

// Monic gcd of a and b over Q (1 for coprime inputs). Pre: not both zero.
RatPoly gcd_poly(const RatPoly& a, const RatPoly& b);

// a / gcd(a, a'): same roots, all simple, lc preserved. Pre: a nonzero.
RatPoly square_free_part(const RatPoly& a);

bool is_square_free(const RatPoly& a);

struct SquarefreeFactor {
    RatPoly factor; // monic, square-free, pairwise coprime across the list
    unsigned multiplicity;
};

// Yun's algorithm: a = lc(a) * prod factor_i^multiplicity_i.
// Constants yield an empty list. Pre: a nonzero.
std::vector<SquarefreeFactor> yun_squarefree_factorization(const RatPoly& a);

} // namespace upos
