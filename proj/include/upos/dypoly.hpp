#pragma once

// Dense polynomials over exact dyadic complex numbers. These are the kernels
// behind product-tree reconstruction: multiplication is exact (no rounding),
// schoolbook below an internal threshold and Karatsuba above it, with an
// OpenMP task-parallel variant that produces bit-identical results.

#include <vector>

#include "upos/arith.hpp"
#include "upos/parallel.hpp"
#include "upos/poly.hpp"

namespace upos {

// Ascending dense coefficients; empty vector = zero polynomial.
using DyCVec = std::vector<DyadicComplex>;

DyCVec dyc_mul(const DyCVec& a, const DyCVec& b, exec::Policy policy);

// Exact product of all leaves via a balanced binary tree (odd leaf promoted).
// Empty input yields the constant 1.
DyCVec dyc_product_tree(std::vector<DyCVec> leaves, exec::Policy policy);

// Split into (real parts, imaginary parts) as rational polynomials.
std::pair<RatPoly, RatPoly> dyc_to_rat(const DyCVec& a);

} // namespace upos
