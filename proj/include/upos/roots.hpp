#pragma once

// Complex root approximation to a prescribed absolute precision 2^(-kappa),
// with exact a-posteriori certification, and exact real-root isolation.
//
// The numeric engine is Aberth-Ehrlich simultaneous iteration in MPFR
// floating point; none of its output is trusted directly. Instead, every
// returned approximation z carries an inclusion disk D(z, rho) with
// rho = 2^e >= d*|A(z)/A'(z)| computed in exact rational arithmetic. Such a
// disk always contains at least one root; d pairwise-disjoint disks for a
// degree-d square-free polynomial therefore contain exactly one root each.
// Disks centered on the real axis prove their root real (the conjugate of
// the root lies in the same disk, so by uniqueness the root is self-
// conjugate); a disk disjoint from its mirror image proves its root strictly
// complex. If any check fails, the working precision doubles and the
// iteration restarts warm.

#include <utility>
#include <vector>

#include "upos/arith.hpp"
#include "upos/poly.hpp"

namespace upos {

struct RootDisk {
    DyadicComplex center;
    Dyadic radius; // always a power of two
};

struct ConjugatePairSet {
    // Each (gamma, delta) with delta > 0 stands for the root pair gamma +- i*delta.
    std::vector<std::pair<Dyadic, Dyadic>> pairs; // sorted lexicographically
    std::vector<Dyadic> real_roots;               // sorted
    long kappa = 0;                               // certified: |true - approx| <= 2^(-kappa)
    std::vector<RootDisk> disks;                  // one per root, pairwise disjoint
};

// Approximate all d roots of a square-free polynomial with positive leading
// coefficient to absolute error <= 2^(-kappa), certified. Throws
// not_square_free_error, or precision_exhausted_error if the escalation
// budget (20 doublings by default, UPOS_MAX_PRECISION bits overall) runs out.
ConjugatePairSet refine_all_roots(const RatPoly& a, long kappa);

struct RealRootIsolation {
    // Open intervals with rational endpoints, sorted, disjoint, one simple
    // real root each; endpoints are never roots.
    std::vector<std::pair<Rat, Rat>> intervals;
    // One non-root rational below all intervals, one strictly between each
    // consecutive pair, one above all. Just {0} when there are no roots.
    std::vector<Rat> sample_points;
};

// Exact isolation of all real roots via Descartes-rule bisection.
// Pre: a square-free.
RealRootIsolation isolate_real_roots(const RatPoly& a);

// Shrink an isolating interval of a (sign change across it) below 2^(-prec)
// width by bisection; returns the refined interval.
std::pair<Rat, Rat> refine_isolating_interval(const RatPoly& a, Rat lo, Rat hi, long prec);

} // namespace upos
