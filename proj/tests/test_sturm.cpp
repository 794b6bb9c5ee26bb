#include <doctest.h>

#include "upos/sturm.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace upos;

namespace {

// Build a polynomial with prescribed integer roots (with multiplicity) times
// an optional strictly-positive quadratic, so the exact distinct real-root
// count is known by construction.
struct KnownRoots {
    RatPoly poly;
    std::set<long> distinct;
};

KnownRoots make_known(std::mt19937_64& rng, int n_roots, bool repeat_some,
                      int n_complex_pairs) {
    KnownRoots out;
    out.poly = RatPoly::constant(Rat(1 + (long)(rng() % 3)));
    for (int i = 0; i < n_roots; ++i) {
        long r = (long)(rng() % 21) - 10;
        out.distinct.insert(r);
        RatPoly lin = RatPoly::x() - RatPoly::constant(Rat(r));
        int mult = repeat_some ? 1 + int(rng() % 3) : 1;
        for (int m = 0; m < mult; ++m) out.poly = out.poly * lin;
    }
    for (int i = 0; i < n_complex_pairs; ++i) {
        // (x - c)^2 + s with s > 0 has no real roots.
        long c = (long)(rng() % 11) - 5, s = 1 + (long)(rng() % 9);
        RatPoly sh = RatPoly::x() - RatPoly::constant(Rat(c));
        out.poly = out.poly * (sh * sh + RatPoly::constant(Rat(s)));
    }
    return out;
}

}  // namespace

TEST_SUITE("sturm") {

TEST_CASE("primitive integer polynomial helpers") {
    zp::ZPoly f = {Int(4), Int(-8), Int(12)};
    zp::make_primitive(f);
    CHECK(f == zp::ZPoly{Int(1), Int(-2), Int(3)});

    // Primitivization keeps the sign pattern (content is positive).
    zp::ZPoly g = {Int(-6), Int(9)};
    zp::make_primitive(g);
    CHECK(g == zp::ZPoly{Int(-2), Int(3)});

    RatPoly a = parse_poly("1/2*x^2 - 1/3");
    zp::ZPoly z = zp::from_rat(a);
    CHECK(z == zp::ZPoly{Int(-2), Int(0), Int(3)});
    CHECK(zp::degree(z) == 2);

    CHECK(zp::sign_at(z, Rat(0)) == -1);
    CHECK(zp::sign_at(z, Rat(10)) == 1);
    CHECK(zp::sign_at(zp::ZPoly{Int(-4), Int(0), Int(6)}, Rat(2)) == 1);
    CHECK(zp::sign_at_pos_inf(z) == 1);
    CHECK(zp::sign_at_neg_inf(z) == 1);
    CHECK(zp::sign_at_neg_inf(zp::ZPoly{Int(0), Int(1)}) == -1);
}

TEST_CASE("pseudo-remainder identity lc(g)^delta * f = q*g + R") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 40; ++i) {
        RatPoly fa = RatPoly(std::vector<Rat>{Rat((long)(rng() % 19) - 9),
                                              Rat((long)(rng() % 19) - 9),
                                              Rat((long)(rng() % 19) - 9),
                                              Rat(1 + (long)(rng() % 5))});
        RatPoly ga = RatPoly(std::vector<Rat>{Rat((long)(rng() % 19) - 9),
                                              Rat(1 + (long)(rng() % 5))});
        zp::ZPoly f = zp::from_rat(fa), g = zp::from_rat(ga);
        long delta = 0;
        zp::ZPoly r = zp::pseudo_rem(f, g, delta);
        // Verify over Q: R - lc(g)^delta * f must be divisible by g.
        RatPoly lhs = zp::to_rat(f);
        Rat scale(1);
        for (long k = 0; k < delta; ++k) scale *= Rat(g.back());
        RatPoly diff = lhs.scaled(scale) - zp::to_rat(r);
        auto [q, rem] = divrem(diff, zp::to_rat(g));
        CHECK(rem.is_zero());
        CHECK(zp::degree(r) < zp::degree(g));
    }
}

TEST_CASE("counts over R match construction") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        auto k = make_known(rng, int(rng() % 4), (trial % 2) == 1, int(rng() % 3));
        if (k.poly.degree() < 1) continue;
        CHECK(sturm_count_real_roots(k.poly) == (long)k.distinct.size());
    }
}

TEST_CASE("repeated roots are counted once") {
    RatPoly a = parse_poly("x - 1");
    RatPoly b = a * a * a * parse_poly("x + 2");
    CHECK(sturm_count_real_roots(b) == 2);
    // Perfect square with no other factors.
    RatPoly c = parse_poly("x^2 - 2");
    CHECK(sturm_count_real_roots(c * c) == 2);
}

TEST_CASE("no real roots for strictly positive polynomials") {
    CHECK(sturm_count_real_roots(parse_poly("x^2 + 1")) == 0);
    CHECK(sturm_count_real_roots(parse_poly("x^4 + 5*x^2 + 4")) == 0);
    CHECK(sturm_count_real_roots(parse_poly("x^4 + 1")) == 0);
}

TEST_CASE("open-interval counts with known roots") {
    // Roots at 1, 2, 3.
    RatPoly a = parse_poly("x^3 - 6*x^2 + 11*x - 6");
    using O = std::optional<Rat>;
    CHECK(sturm_count_real_roots(a, O(Rat(0)), O(Rat(4))) == 3);
    CHECK(sturm_count_real_roots(a, O(Rat(1)), O(Rat(3))) == 1);  // endpoints excluded
    CHECK(sturm_count_real_roots(a, O(Rat(3, 2)), O(Rat(5, 2))) == 1);
    CHECK(sturm_count_real_roots(a, O(), O(Rat(0))) == 0);
    CHECK(sturm_count_real_roots(a, O(Rat(2)), O()) == 1);
    CHECK(sturm_count_real_roots(a, O(), O()) == 3);
}

TEST_CASE("open-interval counts against a sweep oracle") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        auto k = make_known(rng, 1 + int(rng() % 3), true, int(rng() % 2));
        long lo = -11, hi = 11;
        // Oracle: distinct constructed roots strictly inside (lo, hi).
        long expect = 0;
        for (long r : k.distinct)
            if (r > lo && r < hi) ++expect;
        using O = std::optional<Rat>;
        CHECK(sturm_count_real_roots(k.poly, O(Rat(lo)), O(Rat(hi))) == expect);
        // Endpoint placed exactly on a root must not count it.
        if (!k.distinct.empty()) {
            long r0 = *k.distinct.begin();
            long inside = 0;
            for (long r : k.distinct)
                if (r > r0 && r < hi) ++inside;
            CHECK(sturm_count_real_roots(k.poly, O(Rat(r0)), O(Rat(hi))) == inside);
        }
    }
}

TEST_CASE("chain ends in a constant exactly for square-free input") {
    SturmChain sf = SturmChain::build(parse_poly("x^3 - 2*x + 5"));
    CHECK(zp::degree(sf.seq.back()) == 0);

    RatPoly sq = parse_poly("x - 1");
    SturmChain rep = SturmChain::build(sq * sq * parse_poly("x + 3"));
    CHECK(zp::degree(rep.seq.back()) > 0);
}

}  // TEST_SUITE
