#pragma once

// Dense univariate polynomials over the rationals, coefficients stored in
// ascending order with a nonzero trailing coefficient (the zero polynomial
// stores an empty vector and reports degree -1).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upos/arith.hpp"
#include "upos/parallel.hpp"

namespace upos {

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(Rat v) {
        std::vector<Rat> c;
        c.push_back(std::move(v));
        return RatPoly(std::move(c));
    }
    // x^k with coefficient v.
    static RatPoly monomial(Rat v, std::size_t k) {
        std::vector<Rat> c(k + 1);
        c[k] = std::move(v);
        return RatPoly(std::move(c));
    }
    static RatPoly x() { return monomial(Rat(1), 1); }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    // Coefficient of x^k; zero beyond the degree.
    const Rat& coeff(std::size_t k) const {
        static const Rat zero(0);
        return k < c_.size() ? c_[k] : zero;
    }
    const Rat& lc() const;
    const Rat& tc() const;

    RatPoly operator-() const;
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    RatPoly scaled(const Rat& s) const; // s * A
    RatPoly derivative() const;
    RatPoly pow(unsigned long k) const;

    // Multiply by x^k.
    RatPoly shifted_up(std::size_t k) const;

    Rat eval(const Rat& x) const;
    // A(x + a)
    RatPoly taylor_shift(const Rat& a) const;
    // A(s * x)
    RatPoly scale_arg(const Rat& s) const;
    // x^deg * A(1/x)
    RatPoly reversed() const;
    // A(x^2)
    RatPoly subst_x_squared() const;

    Rat one_norm() const;
    Rat inf_norm() const;
    // Max bitsize over coefficients (>= 1; 1 for the zero polynomial).
    std::size_t tau() const;

    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Dense multiplication with an explicit policy; `operator*` forwards to the
// default policy. Karatsuba above the schoolbook threshold, computed over a
// common integer denominator.
RatPoly mul(const RatPoly& a, const RatPoly& b, exec::Policy policy);

// A = (1/denom) * (integer polynomial); used by the integer kernels.
std::pair<std::vector<Int>, Int> to_integer_scaled(const RatPoly& a);
RatPoly from_integer_scaled(const std::vector<Int>& coeffs, const Int& denom);

// Integer dense multiplication kernels (exact; serial and parallel agree
// bit for bit).
std::vector<Int> int_poly_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                              exec::Policy policy);

// Quotient/remainder over Q[x]; divisor must be nonzero.
std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b);
// Division known to be exact; throws internal_error on nonzero remainder.
RatPoly exact_div(const RatPoly& a, const RatPoly& b);

// Exact evaluation at a dyadic complex point; returns (re, im) as rationals.
std::pair<Rat, Rat> eval_complex(const RatPoly& a, const DyadicComplex& z);
Rat eval_dyadic(const RatPoly& a, const Dyadic& x);

// Cauchy-style root bound R = 2 * ||A||_inf / |lc|; every complex root has
// magnitude < R. Requires deg >= 1.
Rat root_magnitude_bound(const RatPoly& a);

// Power-of-two rescaling: returns (B, k) with B = 2^-k * A and lc(B) in
// (1/2, 1]. k = ceil(lg lc(A)); requires lc(A) > 0.
std::pair<RatPoly, long> scale_to_unit_lc(const RatPoly& a);

// Exponent bounds on |A'(alpha_i)| and |A(beta_j)| at roots/root midpoints for
// a degree-d, bitsize-tau polynomial: (-(4*d*tau + 16*d*lg d),
// 2*d*tau + 8*d*lg d). Inputs outside these bands indicate a bug upstream.
std::pair<long, long> min_eval_bounds(long d, long tau);

// floor(lg ||A||_inf): the magnitude metric used by the bench tables.
long floor_lg_inf_norm(const RatPoly& a);

// Text formats. parse_poly accepts either a whitespace-separated ascending
// coefficient list ("4 0 5 0 1") or an expression in x ("x^4 + 5*x^2 + 4");
// any input containing 'x' is treated as an expression. Errors carry the
// character position. Only the variable x is accepted.
RatPoly parse_poly(const std::string& text);
std::string format_poly(const RatPoly& a);

} // namespace upos
