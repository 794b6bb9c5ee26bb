#include <doctest.h>

#include "upos/errors.hpp"
#include "upos/fanin.hpp"
#include "upos/interval.hpp"
#include "upos/karlin.hpp"
#include "upos/suites.hpp"

#include <random>

using namespace upos;

namespace {

Rat reconstruction_residual(const RatPoly& a, const KarlinDecomposition& dec) {
    return (a - karlin_reconstruction(dec)).inf_norm();
}

// The merged point sequence must strictly alternate between the two lists.
bool alternates(const std::vector<Dyadic>& first, const std::vector<Dyadic>& second) {
    std::vector<Rat> merged;
    for (std::size_t i = 0; i < first.size() || i < second.size(); ++i) {
        if (i < first.size()) merged.push_back(first[i].to_rational());
        if (i < second.size()) merged.push_back(second[i].to_rational());
    }
    for (std::size_t i = 1; i < merged.size(); ++i)
        if (!(merged[i - 1] < merged[i])) return false;
    return true;
}

} // namespace

TEST_SUITE("karlin") {

TEST_CASE("interlace_step worked examples") {
    auto [p1, q1] = interlace_step(parse_poly("1"), RatPoly(), Dyadic(0), Dyadic(1));
    CHECK(p1 == parse_poly("x"));
    CHECK(q1 == parse_poly("1"));

    auto [p2, q2] = interlace_step(parse_poly("x"), parse_poly("1"), Dyadic(0), Dyadic(2));
    CHECK(p2 == parse_poly("x^2 - 2"));
    CHECK(q2 == parse_poly("3*x"));

    auto [p3, q3] = interlace_step(parse_poly("x^2 - 2"), parse_poly("3*x"), Dyadic(0), Dyadic(1));
    CHECK(p3 == parse_poly("x^3 - 5*x"));
    CHECK(q3 == parse_poly("4*x^2 - 2"));

    CHECK_THROWS_AS(interlace_step(parse_poly("x"), parse_poly("1"), Dyadic(0), Dyadic(0)),
                    domain_error);
    CHECK_THROWS_AS(interlace_step(parse_poly("x"), parse_poly("1"), Dyadic(1), Dyadic(-1)),
                    domain_error);
}

TEST_CASE("repeated interlace steps equal split_pq exactly") {
    std::mt19937_64 rng(701);
    for (int it = 0; it < 20; ++it) {
        std::vector<std::pair<Dyadic, Dyadic>> pairs;
        long count = 1 + static_cast<long>(rng() % 4);
        for (long j = 0; j < count; ++j) {
            Dyadic gamma(Int(static_cast<long>(rng() % 17) - 8), 2);
            Dyadic delta(Int(static_cast<long>(rng() % 8) + 1), 2);
            pairs.emplace_back(gamma, delta);
        }
        PQPair direct = split_pq(pairs, Rat(1));
        RatPoly p = parse_poly("1");
        RatPoly q;
        for (const auto& [gamma, delta] : pairs) std::tie(p, q) = interlace_step(p, q, gamma, delta);
        CHECK(p == direct.P);
        CHECK(q == direct.Q);
    }
}

TEST_CASE("dyadic square roots carry the promised error bound") {
    CHECK(dyadic_sqrt(Rat(4), 20) == Dyadic(2));
    CHECK(dyadic_sqrt(Rat(1, 4), 20) == Dyadic(Int(1), 1));
    CHECK(dyadic_sqrt(Rat(0), 20) == Dyadic(0));
    for (long t : {16L, 53L, 120L}) {
        for (long qv : {2L, 3L, 7L, 11237L}) {
            Rat q(qv);
            Dyadic s = dyadic_sqrt(q, t);
            Rat sr = s.to_rational();
            CHECK(sr >= 0);
            // |s - sqrt(q)| <= 2^-t  <=>  (s - 2^-t)^2 <= q <= (s + 2^-t)^2.
            CHECK((sr + pow2_rat(-t)) * (sr + pow2_rat(-t)) >= q);
            CHECK((sr - pow2_rat(-t)) * (sr - pow2_rat(-t)) <= q);
        }
    }
    CHECK_THROWS_AS(dyadic_sqrt(Rat(-1), 10), domain_error);
}

TEST_CASE("default precision floor") {
    CHECK(karlin_default_precision(parse_poly("x^2 + 1")) == 64);
    CHECK(karlin_default_precision(wilkinson(10)) > 64);
}

TEST_CASE("real-line decomposition of x^2 + 1 is exact") {
    KarlinDecomposition dec = decompose_R(parse_poly("x^2 + 1"), 64);
    CHECK(dec.domain == KarlinDomain::real_line);
    CHECK(dec.P == parse_poly("x"));
    CHECK(dec.Q == parse_poly("1"));
    CHECK(dec.alpha == 1);
    CHECK(dec.beta == 1);
    REQUIRE(dec.karlin_x.size() == 1);
    CHECK(dec.karlin_y.empty());
    CHECK(abs(dec.karlin_x[0].to_rational()) <= pow2_rat(-50));
    CHECK(reconstruction_residual(parse_poly("x^2 + 1"), dec) <= pow2_rat(-32));
}

TEST_CASE("real-line decomposition of x^4 + 1") {
    RatPoly a = parse_poly("x^4 + 1");
    KarlinDecomposition dec = decompose_R(a, 60);
    CHECK(dec.P.degree() == 2);
    CHECK(dec.Q.degree() == 1);
    CHECK(dec.alpha == 1);
    Rat tol = pow2_rat(-40);
    CHECK(abs(dec.beta - Rat(2)) < tol);
    REQUIRE(dec.karlin_x.size() == 2);
    REQUIRE(dec.karlin_y.size() == 1);
    CHECK(abs(dec.karlin_x[0].to_rational() + 1) < tol);
    CHECK(abs(dec.karlin_x[1].to_rational() - 1) < tol);
    CHECK(abs(dec.karlin_y[0].to_rational()) < tol);
    CHECK(alternates(dec.karlin_x, dec.karlin_y));
    CHECK(reconstruction_residual(a, dec) <= pow2_rat(-30));
}

TEST_CASE("real-line decomposition of x^4 + 5x^2 + 4") {
    RatPoly a = parse_poly("x^4 + 5*x^2 + 4"); // roots +-i, +-2i
    KarlinDecomposition dec = decompose_R(a, 60);
    Rat tol = pow2_rat(-40);
    CHECK((dec.P - parse_poly("x^2 - 2")).inf_norm() < tol);
    CHECK((dec.Q - parse_poly("3*x")).inf_norm() < tol);
    CHECK(dec.alpha == 1);
    CHECK(abs(dec.beta - Rat(9)) < tol);
    REQUIRE(dec.karlin_x.size() == 2);
    for (const Dyadic& x : dec.karlin_x) {
        Rat xr = x.to_rational();
        CHECK(abs(xr * xr - Rat(2)) < tol); // points ~ +-sqrt(2)
    }
    CHECK(alternates(dec.karlin_x, dec.karlin_y));
    CHECK(reconstruction_residual(a, dec) <= pow2_rat(-30));
}

TEST_CASE("real-line preconditions") {
    CHECK_THROWS_AS(decompose_R(parse_poly("x^3 + 1"), 64), domain_error);
    CHECK_THROWS_AS(decompose_R(parse_poly("x^2 - 1"), 64), not_positive_error);
    CHECK_THROWS_AS(decompose_R(parse_poly("-x^2 - 1"), 64), not_positive_error);
    RatPoly repeated = parse_poly("x^2 + 1") * parse_poly("x^2 + 1");
    CHECK_THROWS_AS(decompose_R(repeated, 64), not_square_free_error);
}

TEST_CASE("half-line decomposition examples") {
    RatPoly lin = parse_poly("x + 1");
    KarlinDecomposition dl = decompose_halfline(lin, 64);
    CHECK(dl.domain == KarlinDomain::halfline);
    CHECK(dl.karlin_x.empty());
    CHECK(dl.karlin_y.empty());
    CHECK(dl.alpha == 1);
    CHECK(dl.beta == 1);
    CHECK(karlin_reconstruction(dl) == lin); // 1 + x * 1, exactly

    RatPoly quad = parse_poly("x^2 + 1");
    KarlinDecomposition dq = decompose_halfline(quad, 60);
    REQUIRE(dq.karlin_x.size() == 1);
    CHECK(dq.karlin_y.empty());
    Rat tol = pow2_rat(-40);
    CHECK(abs(dq.karlin_x[0].to_rational() - 1) < tol); // (x-1)^2 + 2x
    CHECK(abs(dq.beta - Rat(2)) < tol);
    CHECK(reconstruction_residual(quad, dq) <= pow2_rat(-30));
}

TEST_CASE("half-line decomposition against the closed-form 2x2 solve") {
    // Monic P = x - p0, Q = q0 with (x - p0)^2 + x q0^2 = x^2 - 2x + 2
    // forces p0 = sqrt(2) and q0^2 = 2 p0 - 2.
    RatPoly a = parse_poly("x^2 - 2*x + 2");
    KarlinDecomposition dec = decompose_halfline(a, 60);
    REQUIRE(dec.karlin_x.size() == 1);
    Rat x0 = dec.karlin_x[0].to_rational();
    Rat tol = pow2_rat(-40);
    CHECK(x0 > 0);
    CHECK(abs(x0 * x0 - Rat(2)) < tol);
    CHECK(abs(dec.beta - (2 * x0 - 2)) < pow2_rat(-30));
    CHECK(reconstruction_residual(a, dec) <= pow2_rat(-30));
}

TEST_CASE("odd-degree half-line input swaps the parity roles") {
    RatPoly a = parse_poly("x^3 + 1"); // positive on [0, inf), degree 3
    KarlinDecomposition dec = decompose_halfline(a, 80);
    CHECK(dec.parity_swapped);
    CHECK(dec.P.degree() == 1); // (d-1)/2 on both sides
    CHECK(dec.Q.degree() == 1);
    for (const Dyadic& pt : dec.karlin_x) CHECK(pt.to_rational() > 0);
    for (const Dyadic& pt : dec.karlin_y) CHECK(pt.to_rational() > 0);
    CHECK(reconstruction_residual(a, dec) <= pow2_rat(-40));
}

TEST_CASE("half-line preconditions and witnesses") {
    CHECK_THROWS_AS(decompose_halfline(parse_poly("x"), 64), domain_error); // A(0) = 0
    try {
        decompose_halfline(parse_poly("x - 1"), 64);
        FAIL("expected a half-line negativity witness");
    } catch (const not_positive_on_domain_error& e) {
        CHECK(e.t >= 0);
        CHECK(e.value == parse_poly("x - 1").eval(e.t));
        CHECK(e.value < 0);
    }
    // Negative only away from zero: constant term positive but dips later.
    try {
        decompose_halfline(parse_poly("x^2 - 3*x + 2"), 64); // roots 1, 2
        FAIL("expected a witness between the roots");
    } catch (const not_positive_on_domain_error& e) {
        CHECK(e.t > 0);
        CHECK(e.value < 0);
        CHECK(e.value == parse_poly("x^2 - 3*x + 2").eval(e.t));
    }
}

TEST_CASE("segment decomposition of x on [1, 2] is exact") {
    KarlinDecomposition dec = decompose_interval(parse_poly("x"), Rat(1), Rat(2), 60);
    CHECK(dec.domain == KarlinDomain::segment);
    CHECK(dec.karlin_x.empty());
    CHECK(dec.karlin_y.empty());
    // alpha (x - 1) + beta (2 - x) = x forces alpha = 2, beta = 1.
    CHECK(dec.alpha == 2);
    CHECK(dec.beta == 1);
    CHECK(karlin_reconstruction(dec) == parse_poly("x"));
}

TEST_CASE("segment decomposition of a constant") {
    KarlinDecomposition dec = decompose_interval(parse_poly("5"), Rat(0), Rat(1), 64);
    CHECK(dec.karlin_x.empty());
    CHECK(dec.karlin_y.empty());
    CHECK(karlin_reconstruction(dec) == parse_poly("5"));
}

TEST_CASE("segment decomposition of x^2 + 1 on [-1, 1]") {
    RatPoly a = parse_poly("x^2 + 1");
    KarlinDecomposition dec = decompose_interval(a, Rat(-1), Rat(1), 60);
    for (const Dyadic& pt : dec.karlin_x) {
        CHECK(pt.to_rational() > -1);
        CHECK(pt.to_rational() < 1);
    }
    for (const Dyadic& pt : dec.karlin_y) {
        CHECK(pt.to_rational() > -1);
        CHECK(pt.to_rational() < 1);
    }
    CHECK(dec.alpha > 0);
    CHECK(dec.beta >= 0);
    CHECK(reconstruction_residual(a, dec) <= pow2_rat(-30));
}

TEST_CASE("segment witnesses and endpoint failures") {
    RatPoly a = parse_poly("x^2 - 3*x + 2"); // negative on (1, 2)
    try {
        decompose_interval(a, Rat(0), Rat(3), 64);
        FAIL("expected a segment negativity witness");
    } catch (const not_positive_on_domain_error& e) {
        CHECK(e.t >= 0);
        CHECK(e.t <= 3);
        CHECK(e.value == a.eval(e.t));
        CHECK(e.value < 0);
    }
    // Negative endpoint is caught by direct evaluation.
    try {
        decompose_interval(parse_poly("x"), Rat(-1), Rat(1), 64);
        FAIL("expected an endpoint witness");
    } catch (const not_positive_on_domain_error& e) {
        CHECK(e.t == -1);
        CHECK(e.value == -1);
    }
    CHECK_THROWS_AS(decompose_interval(parse_poly("1"), Rat(2), Rat(2), 64), domain_error);
}

TEST_CASE("random positive inputs: degrees, alternation, residual") {
    std::mt19937_64 rng(702);
    for (int it = 0; it < 6; ++it) {
        long d = 4 + 2 * static_cast<long>(rng() % 3);
        RatPoly a = random_sos(d, 3, 8, rng()) + RatPoly::constant(Rat(1));
        long prec = karlin_default_precision(a);
        KarlinDecomposition dec;
        try {
            for (;;) {
                try {
                    dec = decompose_R(a, prec);
                    break;
                } catch (const precision_insufficient_error&) {
                    prec *= 2;
                    REQUIRE(prec <= (1L << 20));
                }
            }
        } catch (const not_square_free_error&) {
            continue; // astronomically unlikely, but the precondition is real
        }
        CHECK(dec.P.degree() == d / 2);
        CHECK(dec.Q.degree() == d / 2 - 1);
        CHECK(dec.karlin_x.size() == static_cast<std::size_t>(d / 2));
        CHECK(dec.karlin_y.size() == static_cast<std::size_t>(d / 2 - 1));
        CHECK(alternates(dec.karlin_x, dec.karlin_y));
        CHECK(reconstruction_residual(a, dec) <= pow2_rat(-prec / 2));
    }
}

} // TEST_SUITE
