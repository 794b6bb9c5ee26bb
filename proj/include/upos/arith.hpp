#pragma once

// Exact scalar arithmetic: arbitrary-precision integers and rationals (GMP),
// plus dyadic numbers m * 2^-e used wherever results of floating computations
// must be carried around exactly. Dyadics form a ring: add/sub/mul are exact
// and there is deliberately no division.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "upos/errors.hpp"

namespace upos {

using Int = mpz_class;
using Rat = mpq_class;

// Number of bits in |n|; 0 for n == 0.
inline std::size_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

// Bitsize of a rational: max of numerator/denominator bit lengths plus one
// sign bit. By convention bitsize(0) = 1.
inline std::size_t bitsize(const Rat& q) {
    if (q == 0) return 1;
    return std::max(bit_length(q.get_num()), bit_length(q.get_den())) + 1;
}

inline std::size_t bitsize(const Int& n) {
    if (n == 0) return 1;
    return bit_length(n) + 1;
}

// 2^k as an exact rational, k may be negative.
Rat pow2_rat(long k);

// floor(log2(q)) for q > 0, exact.
long floor_lg(const Rat& q);

// Exact rational parsing/printing. Canonical text form is "num" when the
// denominator is 1 and "num/den" otherwise, both in decimal.
Rat parse_rational(const std::string& text);
std::string format_rational(const Rat& q);

// A dyadic number m * 2^-e with e >= 0. Canonical form: mantissa odd, or
// mantissa zero (then e = 0), or e = 0 (integers keep their value as-is).
struct Dyadic {
    Int m;
    long e = 0;

    Dyadic() : m(0) {}
    explicit Dyadic(long value) : m(value) {}
    explicit Dyadic(Int value) : m(std::move(value)) {}
    Dyadic(Int mantissa, long exponent) : m(std::move(mantissa)), e(exponent) {
        if (e < 0) throw arith_error("dyadic exponent must be nonnegative");
        canonicalize();
    }

    void canonicalize() {
        if (m == 0) {
            e = 0;
            return;
        }
        // Strip factors of two shared by mantissa and 2^e.
        unsigned long tz = mpz_scan1(m.get_mpz_t(), 0);
        unsigned long k = std::min(tz, static_cast<unsigned long>(e));
        if (k > 0) {
            m >>= k;
            e -= static_cast<long>(k);
        }
    }

    bool is_zero() const { return m == 0; }
    bool is_canonical() const {
        return m == 0 ? e == 0 : (e == 0 || mpz_odd_p(m.get_mpz_t()));
    }

    Rat to_rational() const;

    Dyadic operator-() const {
        Dyadic r(*this);
        r.m = -r.m;
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    // Three-way comparison by exact value.
    static int cmp(const Dyadic& a, const Dyadic& b);

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    int sign() const { return sgn(m); }
    Dyadic abs() const {
        Dyadic r(*this);
        if (r.m < 0) r.m = -r.m;
        return r;
    }
};

// Nearest dyadic with exponent <= prec, ties broken to the even mantissa.
// |result - q| <= 2^-prec (in fact <= 2^-(prec+1)).
Dyadic round_to_dyadic(const Rat& q, long prec);

// Exact conversion; throws arith_error unless the denominator is a power of 2.
Dyadic dyadic_from_rational_exact(const Rat& q);

// Canonical text form "m*2^-e", e.g. "5*2^-4"; zero prints as "0*2^-0".
std::string format_dyadic(const Dyadic& d);
Dyadic parse_dyadic(const std::string& text);

std::size_t bitsize(const Dyadic& d);

struct DyadicComplex {
    Dyadic re;
    Dyadic im;

    DyadicComplex() = default;
    DyadicComplex(Dyadic r, Dyadic i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im.is_zero(); }
    DyadicComplex conj() const { return {re, -im}; }
    // |z|^2, exact.
    Dyadic norm2() const { return re * re + im * im; }

    friend DyadicComplex operator+(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend DyadicComplex operator-(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend DyadicComplex operator*(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const DyadicComplex& a, const DyadicComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// ceil(log2(max(d, 2))): the "lg" that appears in every precision formula.
long lg_of_degree(long d);

} // namespace upos
