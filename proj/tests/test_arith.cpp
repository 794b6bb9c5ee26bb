#include <doctest.h>

#include "upos/arith.hpp"

#include <random>
#include <sstream>

using namespace upos;

TEST_SUITE("arith") {

TEST_CASE("bit_length counts bits of |n|") {
    CHECK(bit_length(Int(0)) == 0);
    CHECK(bit_length(Int(1)) == 1);
    CHECK(bit_length(Int(2)) == 2);
    CHECK(bit_length(Int(3)) == 2);
    CHECK(bit_length(Int(4)) == 3);
    CHECK(bit_length(Int(-7)) == 3);
    CHECK(bit_length(Int(1) << 100) == 101);
}

TEST_CASE("bitsize of rationals") {
    // bitsize(p/q) = max(bit_length(p), bit_length(q)) + 1, and bitsize(0) = 1.
    CHECK(bitsize(Rat(0)) == 1);
    CHECK(bitsize(Rat(1)) == 2);
    CHECK(bitsize(Rat(3, 4)) == 4);
    CHECK(bitsize(Rat(-255)) == 9);
    CHECK(bitsize(Rat(1, 1024)) == 12);
}

TEST_CASE("pow2_rat covers both signs of the exponent") {
    CHECK(pow2_rat(0) == Rat(1));
    CHECK(pow2_rat(5) == Rat(32));
    CHECK(pow2_rat(-3) == Rat(1, 8));
    CHECK(pow2_rat(-70) * pow2_rat(70) == Rat(1));
}

TEST_CASE("floor_lg of positive rationals") {
    CHECK(floor_lg(Rat(1)) == 0);
    CHECK(floor_lg(Rat(2)) == 1);
    CHECK(floor_lg(Rat(3)) == 1);
    CHECK(floor_lg(Rat(4)) == 2);
    CHECK(floor_lg(Rat(1, 2)) == -1);
    CHECK(floor_lg(Rat(3, 8)) == -2);  // 3/8 in [1/4, 1/2)
    CHECK(floor_lg(Rat(1, 3)) == -2);  // 1/3 in [1/4, 1/2)

    // Property: 2^floor_lg(q) <= q < 2^(floor_lg(q)+1) on random values.
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rat q(1 + (long)(rng() % 100000), 1 + (long)(rng() % 100000));
        q.canonicalize();  // the two-argument ctor does not reduce
        long e = floor_lg(q);
        CHECK(pow2_rat(e) <= q);
        CHECK(q < pow2_rat(e + 1));
    }
}

TEST_CASE("dyadic canonical form keeps odd mantissa or zero exponent") {
    Dyadic a(Int(8), 5);  // 8/32 = 1/4 = 1 * 2^-2
    CHECK(a.m == 1);
    CHECK(a.e == 2);

    Dyadic z(Int(0), 9);
    CHECK(z.m == 0);
    CHECK(z.e == 0);
    CHECK(z.is_zero());

    Dyadic w(Int(12), 1);  // 6, integer: exponent drops to zero
    CHECK(w.m == 6);
    CHECK(w.e == 0);
}

TEST_CASE("dyadic ring operations agree with rational arithmetic") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Dyadic a(Int((long)(rng() % 2001) - 1000), long(rng() % 8));
        Dyadic b(Int((long)(rng() % 2001) - 1000), long(rng() % 8));
        Rat ra = a.to_rational(), rb = b.to_rational();
        CHECK((a + b).to_rational() == ra + rb);
        CHECK((a - b).to_rational() == ra - rb);
        CHECK((a * b).to_rational() == ra * rb);
        CHECK((-a).to_rational() == -ra);
        CHECK(Dyadic::cmp(a, b) == ((ra < rb) ? -1 : (ra == rb ? 0 : 1)));
    }
}

TEST_CASE("dyadic comparisons and helpers") {
    Dyadic half(Int(1), 1), quarter(Int(1), 2);
    CHECK(half > quarter);
    CHECK(quarter < half);
    CHECK(half == Dyadic(Int(2), 2));
    CHECK(half.sign() == 1);
    CHECK((-half).sign() == -1);
    CHECK(Dyadic().sign() == 0);
    CHECK((-half).abs() == half);
}

TEST_CASE("round_to_dyadic rounds to nearest, ties to even") {
    // 1/3 at 4 fractional bits: 16/3 = 5.33.. -> mantissa 5 -> 5/16.
    CHECK(round_to_dyadic(Rat(1, 3), 4) == Dyadic(Int(5), 4));
    // 5/32 at 4 bits: scaled 2.5, tie; even neighbor is 2 -> 2/16 = 1/8.
    CHECK(round_to_dyadic(Rat(5, 32), 4) == Dyadic(Int(2), 4));
    // 7/32 at 4 bits: scaled 3.5, tie; even neighbor is 4 -> 4/16 = 1/4.
    CHECK(round_to_dyadic(Rat(7, 32), 4) == Dyadic(Int(4), 4));
    // Negative mirror of the above ties.
    CHECK(round_to_dyadic(Rat(-5, 32), 4) == Dyadic(Int(-2), 4));
    CHECK(round_to_dyadic(Rat(-7, 32), 4) == Dyadic(Int(-4), 4));

    // Property: |round(q) - q| <= 2^-(prec+1) on random rationals.
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        Rat q((long)(rng() % 20001) - 10000, 1 + (long)(rng() % 999));
        q.canonicalize();
        long prec = 1 + long(rng() % 60);
        Rat err = abs(round_to_dyadic(q, prec).to_rational() - q);
        CHECK(err <= pow2_rat(-prec - 1));
    }
}

TEST_CASE("dyadic_from_rational_exact accepts exactly the dyadic rationals") {
    CHECK(dyadic_from_rational_exact(Rat(3, 8)) == Dyadic(Int(3), 3));
    CHECK(dyadic_from_rational_exact(Rat(-5)) == Dyadic(Int(-5)));
    CHECK_THROWS_AS(dyadic_from_rational_exact(Rat(1, 3)), arith_error);
}

TEST_CASE("dyadic text form round-trips") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        Dyadic d(Int((long)(rng() % 4001) - 2000), long(rng() % 12));
        CHECK(parse_dyadic(format_dyadic(d)) == d);
    }
    CHECK(format_dyadic(Dyadic(Int(3), 2)) == "3*2^-2");
    CHECK(format_dyadic(Dyadic(Int(-7))) == "-7*2^-0");
    CHECK(parse_dyadic("5*2^-4") == Dyadic(Int(5), 4));
    CHECK_THROWS_AS(parse_dyadic("abc"), parse_error);
}

TEST_CASE("rational text form round-trips") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-12") == Rat(-12));
    CHECK(format_rational(Rat(5, 3)) == "5/3");
    CHECK(format_rational(Rat(4)) == "4");
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational(""), parse_error);
}

TEST_CASE("complex dyadic arithmetic matches componentwise rationals") {
    std::mt19937_64 rng(19);
    auto rnd = [&]() { return Dyadic(Int((long)(rng() % 401) - 200), long(rng() % 6)); };
    for (int i = 0; i < 200; ++i) {
        DyadicComplex u{rnd(), rnd()}, v{rnd(), rnd()};
        DyadicComplex p = u * v;
        // (a+bi)(c+di) = (ac-bd) + (ad+bc)i
        CHECK(p.re == u.re * v.re - u.im * v.im);
        CHECK(p.im == u.re * v.im + u.im * v.re);
        CHECK((u + v).re == u.re + v.re);
        CHECK((u - v).im == u.im - v.im);
        CHECK(u.conj().im == -u.im);
        CHECK(u.norm2() == u.re * u.re + u.im * u.im);
    }
    CHECK(DyadicComplex{Dyadic(Int(1)), Dyadic()}.is_real());
    CHECK(!DyadicComplex{Dyadic(), Dyadic(Int(1), 3)}.is_real());
}

TEST_CASE("bitsize of dyadics") {
    CHECK(bitsize(Dyadic()) == 1);
    CHECK(bitsize(Dyadic(Int(1))) >= 1);
    // Grows with both mantissa and exponent.
    CHECK(bitsize(Dyadic(Int(255), 20)) > bitsize(Dyadic(Int(3), 2)));
}

TEST_CASE("lg_of_degree is the ceiling log with floor value 1") {
    CHECK(lg_of_degree(0) == 1);
    CHECK(lg_of_degree(1) == 1);
    CHECK(lg_of_degree(2) == 1);
    CHECK(lg_of_degree(3) == 2);
    CHECK(lg_of_degree(4) == 2);
    CHECK(lg_of_degree(5) == 3);
    CHECK(lg_of_degree(1024) == 10);
    CHECK(lg_of_degree(1025) == 11);
}

}  // TEST_SUITE
