#include "upos/squarefree.hpp"

#include "upos/errors.hpp"
#include "upos/sturm.hpp"

namespace upos {

namespace {

RatPoly make_monic(const RatPoly& a) {
    if (a.is_zero()) return a;
    return a.scaled(Rat(1) / a.lc());
}

} // namespace

RatPoly gcd_poly(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() && b.is_zero()) throw domain_error("gcd of two zero polynomials");
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    zp::ZPoly f = zp::from_rat(a);
    zp::ZPoly g = zp::from_rat(b);
    if (zp::degree(f) < zp::degree(g)) std::swap(f, g);
    while (!g.empty()) {
        long delta = 0;
        zp::ZPoly r = zp::pseudo_rem(f, g, delta);
        zp::make_primitive(r);
        f = std::move(g);
        g = std::move(r);
    }
    return make_monic(zp::to_rat(f));
}

RatPoly square_free_part(const RatPoly& a) {
    if (a.is_zero()) throw domain_error("square-free part of zero polynomial");
    if (a.degree() <= 1) return a;
    return exact_div(a, gcd_poly(a, a.derivative()));
}

bool is_square_free(const RatPoly& a) {
    if (a.is_zero()) return false;
    if (a.degree() <= 1) return true;
    return gcd_poly(a, a.derivative()).degree() == 0;
}

std::vector<SquarefreeFactor> yun_squarefree_factorization(const RatPoly& a) {
    if (a.is_zero()) throw domain_error("square-free factorization of zero polynomial");
    std::vector<SquarefreeFactor> out;
    if (a.degree() <= 0) return out;
    RatPoly f = make_monic(a);
    RatPoly g = gcd_poly(f, f.derivative());
    if (g.degree() == 0) {
        out.push_back({f, 1});
        return out;
    }
    RatPoly w = exact_div(f, g);
    RatPoly y = exact_div(f.derivative(), g);
    RatPoly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        RatPoly p = gcd_poly(w, z);
        if (p.degree() > 0) out.push_back({p, i});
        w = exact_div(w, p);
        y = exact_div(z, p);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

} // namespace upos
