#pragma once

#include <utility>
#include <vector>

#include "upos/arith.hpp"
#include "upos/poly.hpp"

namespace upos {

// Interlacing decompositions: a polynomial strictly positive on the domain is
// written with two real-rooted polynomials whose roots strictly alternate.
//
//   real line, deg A = 2m:  A = alpha P^2 + beta (Q/lc(Q))^2-style, concretely
//                           A ~ lc(A) (P^2 + Q^2), deg P = m, deg Q = m - 1,
//                           roots x_1 < y_1 < ... < y_{m-1} < x_m;
//   half-line:              A ~ lc(A) (P^2 + x Q^2), all roots > 0;
//   segment [a, b]:         d even: A ~ alpha prod (x-x_i)^2
//                                       + beta (x-a)(b-x) prod (x-y_j)^2,
//                           d odd:  A ~ alpha (x-a) prod (x-x_i)^2
//                                       + beta (b-x) prod (x-y_j)^2.
//
// The alternating root lists are the decomposition's points. They are
// algebraic numbers; what is returned are dyadic approximations at the
// requested precision together with the dyadic-coefficient pair (P, Q), and
// every structural claim (degrees, alternation via disjoint isolating
// intervals, reconstruction residual <= 2^(-prec/2)) is asserted exactly.

enum class KarlinDomain { real_line, halfline, segment };

struct KarlinDecomposition {
    KarlinDomain domain = KarlinDomain::real_line;
    Rat a, b;      // segment endpoints; unused otherwise
    RatPoly P;     // dyadic-coefficient approximation of the interlacing pair
    RatPoly Q;
    Rat alpha;     // weight of the x-group of squares in the reconstruction
    Rat beta;      // weight of the y-group
    std::vector<Dyadic> karlin_x; // sorted approximations of the roots of P
    std::vector<Dyadic> karlin_y; // sorted approximations of the roots of Q
    long precision = 0;
    // Half-line/segment only: the parity extraction swaps the roles of the
    // even and odd parts when deg A is odd.
    bool parity_swapped = false;
};

// One step of the interlacing recursion:
//   P' = (x - gamma) P - delta Q,   Q' = delta P + (x - gamma) Q.
// Multiplying P + iQ by (x - gamma + i delta); requires delta > 0 (the
// upper-half-plane convention is what makes the pair interlacing).
std::pair<RatPoly, RatPoly> interlace_step(const RatPoly& p, const RatPoly& q,
                                           const Dyadic& gamma, const Dyadic& delta);

// max(64, 2 (d tau + 4 d)): the default working precision.
long karlin_default_precision(const RatPoly& a);

// Decomposition over the real line. Pre: A square-free, even degree, strictly
// positive over R. Throws not_positive_error, not_square_free_error,
// domain_error (odd degree), or precision_insufficient_error when the
// alternation cannot be certified at prec (retry with more bits).
KarlinDecomposition decompose_R(const RatPoly& a, long prec);

// Decomposition over [0, inf). Pre: A square-free, A(0) != 0, strictly
// positive on the half-line. Throws not_positive_on_domain_error with an
// exact witness when A is negative somewhere on [0, inf).
KarlinDecomposition decompose_halfline(const RatPoly& a, long prec);

// Decomposition over [a, b] (a < b): affine map to [-1, 1], Goursat transform
// to the half-line, then the points are mapped back into (a, b).
KarlinDecomposition decompose_interval(const RatPoly& a_poly, const Rat& a, const Rat& b, long prec);

// The reconstruction the decomposition stands for:
//   alpha * m_x * prod (x - x_i)^2 + beta * m_y * prod (x - y_j)^2
// with the domain's multipliers m_x, m_y. Exact in the stored points.
RatPoly karlin_reconstruction(const KarlinDecomposition& dec);

// floor(sqrt(q)) scaled: a dyadic s with |s - sqrt(q)| <= 2^(-t), q >= 0.
Dyadic dyadic_sqrt(const Rat& q, long t);

} // namespace upos
