#include <doctest.h>

#include "upos/errors.hpp"
#include "upos/interval.hpp"

#include <random>

using namespace upos;

namespace {

Rat random_rat(std::mt19937_64& rng, long span = 16) {
    long num = static_cast<long>(rng() % (2 * span + 1)) - span;
    long den = static_cast<long>(rng() % span) + 1;
    Rat q(num, den);
    q.canonicalize();
    return q;
}

RatPoly random_poly(std::mt19937_64& rng, long degree, long span = 8) {
    std::vector<Rat> c(static_cast<size_t>(degree) + 1);
    for (auto& v : c) v = random_rat(rng, span);
    while (c.back() == 0) c.back() = random_rat(rng, span);
    return RatPoly(std::move(c));
}

// Aggregate sum w * s^2 over a group, without the boundary multiplier.
RatPoly group_sum(const std::vector<WeightedSquare>& group) {
    RatPoly acc;
    for (const WeightedSquare& ws : group) acc = acc + (ws.s * ws.s).scaled(ws.w);
    return acc;
}

bool weights_nonnegative(const IntervalCertificate& cert) {
    for (const WeightedSquare& ws : cert.even_group)
        if (ws.w < 0) return false;
    for (const WeightedSquare& ws : cert.odd_group)
        if (ws.w < 0) return false;
    return true;
}

} // namespace

TEST_SUITE("interval") {

TEST_CASE("linear-fractional composition against direct evaluation") {
    std::mt19937_64 rng(501);
    RatPoly p = parse_poly("1 - x");
    RatPoly q = parse_poly("1 + x");
    for (int it = 0; it < 25; ++it) {
        long deg = static_cast<long>(rng() % 5);
        RatPoly f = random_poly(rng, deg);
        long d = deg + static_cast<long>(rng() % 3);
        RatPoly g = compose_linear_fractional(f, d, p, q);
        for (int s = 0; s < 5; ++s) {
            Rat t = random_rat(rng);
            Rat qt = q.eval(t);
            if (qt == 0) continue;
            // g(t) = f(p(t)/q(t)) q(t)^d
            Rat expect = f.eval(p.eval(t) / qt);
            for (long i = 0; i < d; ++i) expect *= qt;
            CHECK(g.eval(t) == expect);
        }
    }
    CHECK_THROWS_AS(compose_linear_fractional(parse_poly("x^2"), 1, p, q), domain_error);
}

TEST_CASE("segment transform worked examples") {
    CHECK(transform_to_line(parse_poly("x"), 1, Rat(1), Rat(2)) == parse_poly("2*x^2 + 1"));
    CHECK(transform_to_line(parse_poly("1"), 0, Rat(-3), Rat(7)) == parse_poly("1"));
    CHECK(transform_to_line(parse_poly("x^2"), 2, Rat(0), Rat(1)) == parse_poly("x^4"));
    CHECK_THROWS_AS(transform_to_line(parse_poly("x"), 1, Rat(2), Rat(2)), domain_error);
    CHECK_THROWS_AS(transform_to_line(parse_poly("x"), 1, Rat(3), Rat(2)), domain_error);
}

TEST_CASE("segment transform equals the substitution at random points") {
    std::mt19937_64 rng(502);
    for (int it = 0; it < 20; ++it) {
        long deg = static_cast<long>(rng() % 6);
        RatPoly a_poly = random_poly(rng, deg);
        Rat a = random_rat(rng);
        Rat b = a + abs(random_rat(rng)) + 1;
        RatPoly phi = transform_to_line(a_poly, deg, a, b);
        for (int s = 0; s < 5; ++s) {
            Rat t = random_rat(rng);
            Rat den = Rat(1) + t * t;
            Rat x = (a + b * t * t) / den;
            Rat expect = a_poly.eval(x);
            for (long i = 0; i < deg; ++i) expect *= den;
            CHECK(phi.eval(t) == expect);
        }
    }
}

TEST_CASE("half-line transform is x -> y^2") {
    CHECK(transform_halfline(parse_poly("x + 1")) == parse_poly("x^2 + 1"));
    CHECK(transform_halfline(parse_poly("x^2 + 1")) == parse_poly("x^4 + 1"));
    CHECK(transform_halfline(parse_poly("2*x")) == parse_poly("2*x^2"));
}

TEST_CASE("Goursat transform examples and involution") {
    CHECK(goursat(parse_poly("x"), 1) == parse_poly("1 - x"));
    CHECK(goursat(parse_poly("1 - x"), 1) == parse_poly("2*x"));
    CHECK(goursat(parse_poly("x^2 + 1"), 2) == parse_poly("2*x^2 + 2"));
    CHECK_THROWS_AS(goursat(parse_poly("x^2"), 1), domain_error);

    std::mt19937_64 rng(503);
    for (int it = 0; it < 40; ++it) {
        long deg = static_cast<long>(rng() % 7);
        RatPoly a_poly = random_poly(rng, deg);
        long d = deg + static_cast<long>(rng() % 2);
        RatPoly twice = goursat(goursat(a_poly, d), d);
        CHECK(twice == a_poly.scaled(pow2_rat(d)));
    }
}

TEST_CASE("x on [1, 2] reproduces the hand identity x = (2-x) + 2(x-1)") {
    IntervalCertificate cert = certify_interval(parse_poly("x"), Rat(1), Rat(2));
    CHECK(cert.domain == IntervalDomain::segment);
    CHECK(cert.degree == 1);
    CHECK(weights_nonnegative(cert));
    // Odd degree: multipliers are (2 - x) and (x - 1); the aggregated squares
    // must equal the constants of the hand-written identity exactly.
    CHECK(group_sum(cert.even_group) == parse_poly("1"));
    CHECK(group_sum(cert.odd_group) == parse_poly("2"));
    CHECK(expand_interval_certificate(cert) == parse_poly("x"));
}

TEST_CASE("constant certificate on a segment") {
    IntervalCertificate cert = certify_interval(parse_poly("1"), Rat(0), Rat(1));
    REQUIRE(cert.even_group.size() == 1);
    CHECK(cert.even_group[0].w == 1);
    CHECK(cert.even_group[0].s == parse_poly("1"));
    CHECK(cert.odd_group.empty());
    CHECK(expand_interval_certificate(cert) == parse_poly("1"));
}

TEST_CASE("positivity depends on the segment, with exact witnesses") {
    RatPoly a_poly = parse_poly("x^2 - 3*x + 2"); // (x-1)(x-2)
    IntervalCertificate cert = certify_interval(a_poly, Rat(3), Rat(4));
    CHECK(weights_nonnegative(cert));
    CHECK(expand_interval_certificate(cert) == a_poly);

    try {
        certify_interval(a_poly, Rat(0), Rat(3));
        FAIL("expected a negativity witness on [0, 3]");
    } catch (const not_positive_on_domain_error& e) {
        CHECK(Rat(0) <= e.t);
        CHECK(e.t <= Rat(3));
        CHECK(e.value == a_poly.eval(e.t));
        CHECK(e.value < 0);
    }
}

TEST_CASE("half-line certificates: examples and witnesses") {
    IntervalCertificate lin = certify_halfline(parse_poly("x + 1"));
    CHECK(lin.domain == IntervalDomain::halfline);
    CHECK(weights_nonnegative(lin));
    // x + 1 = 1*1^2 + x*1^2 in aggregate.
    CHECK(group_sum(lin.even_group) == parse_poly("1"));
    CHECK(group_sum(lin.odd_group) == parse_poly("1"));
    CHECK(expand_interval_certificate(lin) == parse_poly("x + 1"));

    IntervalCertificate quad = certify_halfline(parse_poly("x^2 + 1"));
    CHECK(weights_nonnegative(quad));
    CHECK(expand_interval_certificate(quad) == parse_poly("x^2 + 1"));

    try {
        certify_halfline(parse_poly("x - 1"));
        FAIL("expected a negativity witness on the half-line");
    } catch (const not_positive_on_domain_error& e) {
        CHECK(e.t >= 0);
        CHECK(e.value == parse_poly("x - 1").eval(e.t));
        CHECK(e.value < 0);
    }
}

TEST_CASE("inputs vanishing at the boundary still certify") {
    // x is zero at 0 yet positive on (0, inf): the square cofactor route.
    IntervalCertificate lin = certify_halfline(parse_poly("x"));
    CHECK(expand_interval_certificate(lin) == parse_poly("x"));
    CHECK(weights_nonnegative(lin));

    // x^2 on [0, 1] vanishes at the left endpoint.
    IntervalCertificate sq = certify_interval(parse_poly("x^2"), Rat(0), Rat(1));
    CHECK(expand_interval_certificate(sq) == parse_poly("x^2"));
    CHECK(weights_nonnegative(sq));
}

TEST_CASE("zero polynomial yields the empty certificate") {
    CHECK(expand_interval_certificate(certify_halfline(RatPoly())).is_zero());
    CHECK(expand_interval_certificate(certify_interval(RatPoly(), Rat(0), Rat(1))).is_zero());
}

TEST_CASE("random positive polynomials certify exactly on random segments") {
    std::mt19937_64 rng(504);
    for (int it = 0; it < 12; ++it) {
        long half = 1 + static_cast<long>(rng() % 3);
        RatPoly f = random_poly(rng, half);
        RatPoly a_poly = (f * f) + RatPoly::constant(Rat(1)); // > 0 everywhere
        Rat a = random_rat(rng);
        Rat b = a + abs(random_rat(rng)) + Rat(1, 3);
        IntervalCertificate cert = certify_interval(a_poly, a, b);
        CHECK(weights_nonnegative(cert));
        CHECK(expand_interval_certificate(cert) == a_poly);
    }
}

TEST_CASE("affine rescaling to [0, 1] agrees with direct certification") {
    std::mt19937_64 rng(505);
    for (int it = 0; it < 6; ++it) {
        RatPoly f = random_poly(rng, 2);
        RatPoly a_poly = (f * f) + RatPoly::constant(Rat(1, 7));
        Rat a = random_rat(rng);
        Rat b = a + abs(random_rat(rng)) + 1;
        // B(x) = A((b-a)x + a) restricted to [0, 1] covers the same values.
        RatPoly rescaled = a_poly.taylor_shift(a).scale_arg(b - a);
        IntervalCertificate direct = certify_interval(a_poly, a, b);
        IntervalCertificate unit = certify_interval(rescaled, Rat(0), Rat(1));
        CHECK(expand_interval_certificate(direct) == a_poly);
        CHECK(expand_interval_certificate(unit) == rescaled);
    }
    // A negative dip inside maps to a witness through either route.
    RatPoly dip = parse_poly("x^2 - 3*x + 2");
    CHECK_THROWS_AS(certify_interval(dip, Rat(1), Rat(2)), not_positive_on_domain_error);
    RatPoly dip01 = dip.taylor_shift(Rat(1)); // A(x + 1) on [0, 1]
    CHECK_THROWS_AS(certify_interval(dip01, Rat(0), Rat(1)), not_positive_on_domain_error);
}

} // TEST_SUITE
