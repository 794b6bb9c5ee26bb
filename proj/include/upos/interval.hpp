#pragma once

#include <vector>

#include "upos/poly.hpp"
#include "upos/usos.hpp"

namespace upos {

// Positivity certificates over a segment [a, b] or the half-line [0, inf).
//
// Both reduce to positivity over R:
//
//   half-line   A(x) > 0 on [0, inf)   <=>   A(y^2) > 0 on R,
//   segment     A(x) > 0 on [a, b]     <=>   A_phi(y) > 0 on R, where
//               A_phi(y) = (1 + y^2)^d A((a + b y^2) / (1 + y^2)).
//
// The substitution y^2 = (x - a)/(b - x) inverts the segment map, and pushing
// a weighted-SOS certificate for A_phi back through it yields an identity with
// nonnegative boundary multipliers:
//
//   d even:  A = sum w_j e_j^2  +  (x - a)(b - x) sum w_j o_j^2
//   d odd:   A = (b - x) sum w_j e_j^2  +  (x - a) sum w_j o_j^2
//
// and over the half-line (y^2 = x)
//
//   A = sum w_j e_j^2  +  x sum w_j o_j^2.
//
// Here e_j / o_j come from the even/odd split of the j-th summand of the
// certificate for the transformed polynomial; the cross terms cancel in the
// aggregate because the transformed polynomial is even in y.

// Thrown when a polynomial handed to a domain-restricted certifier is in fact
// negative somewhere on that domain. Carries an exact counterexample.
struct not_positive_on_domain_error : error {
    Rat t;     // point inside the domain
    Rat value; // A(t), exactly; negative
    not_positive_on_domain_error(const std::string& domain, Rat t_, Rat value_)
        : error("polynomial is negative on the " + domain + ": value " +
                format_rational(value_) + " at t = " + format_rational(t_)),
          t(std::move(t_)), value(std::move(value_)) {}
};

// f(p(x)/q(x)) * q(x)^d for f of degree <= d: the numerator of a degree-d
// linear-fractional substitution. Exact; the workhorse behind all the domain
// transforms below.
RatPoly compose_linear_fractional(const RatPoly& f, long d, const RatPoly& p, const RatPoly& q);

// (1 + y^2)^d * A((a + b y^2)/(1 + y^2)). Requires a < b (else domain_error)
// and d >= deg A. Strict positivity of A on [a, b) is equivalent to strict
// positivity of the result on R; the leading coefficient equals A(b), so
// positivity at b itself is also forced when the result is certified.
RatPoly transform_to_line(const RatPoly& a_poly, long d, const Rat& a, const Rat& b);

// A(y^2): positivity of A on [0, inf) is equivalent to positivity on R.
RatPoly transform_halfline(const RatPoly& a_poly);

// The Goursat transform G[A](x) = (1 + x)^d A((1 - x)/(1 + x)) for d >= deg A
// (else domain_error). Maps positivity on [-1, 1] to positivity on [0, inf)
// and is an involution up to scale: G[G[A]] = 2^d A.
RatPoly goursat(const RatPoly& a_poly, long d);

enum class IntervalDomain { segment, halfline };

// A positivity certificate over a segment or the half-line. The two groups
// hold plain squares and squares carried by the domain's boundary multiplier:
//
//   domain    parity of d   even_group multiplier   odd_group multiplier
//   segment   even          1                       (x - a)(b - x)
//   segment   odd           (b - x)                 (x - a)
//   halfline  --            1                       x
//
// expand_interval_certificate recomputes the right-hand side exactly; it must
// equal the input polynomial coefficient for coefficient.
struct IntervalCertificate {
    IntervalDomain domain = IntervalDomain::segment;
    Rat a;                 // segment endpoints; unused for the half-line
    Rat b;
    long degree = 0;       // the degree parameter d used by the transform
    std::vector<WeightedSquare> even_group;
    std::vector<WeightedSquare> odd_group;
};

// The two boundary multipliers for a certificate, in group order.
std::pair<RatPoly, RatPoly> boundary_multipliers(const IntervalCertificate& cert);

// sum_{even_group} w s^2 * m_even + sum_{odd_group} w s^2 * m_odd, exactly.
RatPoly expand_interval_certificate(const IntervalCertificate& cert);

// Certify A > 0 on [a, b] (a < b, else domain_error). Throws
// not_positive_on_domain_error with an exact witness in [a, b] otherwise.
IntervalCertificate certify_interval(const RatPoly& a_poly, const Rat& a, const Rat& b);

// Certify A > 0 on [0, inf). Same contract over the half-line.
IntervalCertificate certify_halfline(const RatPoly& a_poly);

} // namespace upos
