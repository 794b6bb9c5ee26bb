#pragma once

// Exact real-root counting via Sturm chains.
//
// Chains are built over primitive integer polynomials using signed
// pseudo-remainders, stripping integer content after every step so
// coefficients stay as small as the subresultant structure allows. The chain
// ends in (a multiple of) gcd(A, A'), so sign-variation differences count
// *distinct* real roots even for non-square-free input.

#include <optional>
#include <vector>

#include "upos/arith.hpp"
#include "upos/poly.hpp"

namespace upos {

// Dense integer polynomials, ascending, used by the sign machinery here and
// by root isolation. Zero polynomial = empty vector.
namespace zp {

using ZPoly = std::vector<Int>;

void trim(ZPoly& f);
// Divide by the positive content; keeps the sign pattern.
void make_primitive(ZPoly& f);
// Primitive integer polynomial that is a positive rational multiple of a.
ZPoly from_rat(const RatPoly& a);
RatPoly to_rat(const ZPoly& f);
ZPoly derivative(const ZPoly& f);
long degree(const ZPoly& f); // -1 for zero

// Exact sign of f at a rational point / at the infinities.
int sign_at(const ZPoly& f, const Rat& t);
int sign_at_pos_inf(const ZPoly& f);
int sign_at_neg_inf(const ZPoly& f);

// Pseudo-remainder R with lc(g)^delta * f = q*g + R, delta = deg f - deg g + 1.
ZPoly pseudo_rem(const ZPoly& f, const ZPoly& g, long& delta);

} // namespace zp

struct SturmChain {
    std::vector<zp::ZPoly> seq; // primitive; seq[0] ~ A, seq[1] ~ A'

    static SturmChain build(const RatPoly& a);

    int variations_at(const Rat& t) const;
    int variations_at_pos_inf() const;
    int variations_at_neg_inf() const;
};

// Distinct real roots of a over all of R. Pre: a nonzero.
long sturm_count_real_roots(const RatPoly& a);

// Distinct real roots in the *open* interval (lo, hi); an absent endpoint
// means unbounded on that side. Endpoint roots are divided out first, so the
// count is exact for the open interval. Pre: a nonzero, lo < hi when both set.
long sturm_count_real_roots(const RatPoly& a, const std::optional<Rat>& lo,
                            const std::optional<Rat>& hi);

} // namespace upos
