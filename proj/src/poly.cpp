#include "upos/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "upos/errors.hpp"

namespace upos {

namespace exec {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Policy default_policy() {
    return max_threads() > 1 ? Policy::parallel : Policy::serial;
}

} // namespace exec

const Rat& RatPoly::lc() const {
    if (c_.empty()) throw domain_error("lc of zero polynomial");
    return c_.back();
}

const Rat& RatPoly::tc() const {
    if (c_.empty()) throw domain_error("tc of zero polynomial");
    return c_.front();
}

RatPoly RatPoly::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v = -v;
    return RatPoly(std::move(r));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.c_.size()) r[i] += a.c_[i];
        if (i < b.c_.size()) r[i] += b.c_[i];
    }
    return RatPoly(std::move(r));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.c_.size()) r[i] += a.c_[i];
        if (i < b.c_.size()) r[i] -= b.c_[i];
    }
    return RatPoly(std::move(r));
}

RatPoly RatPoly::scaled(const Rat& s) const {
    if (s == 0) return RatPoly();
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= s;
    return RatPoly(std::move(r));
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return RatPoly(std::move(r));
}

RatPoly RatPoly::pow(unsigned long k) const {
    RatPoly result = RatPoly::constant(Rat(1));
    RatPoly base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

RatPoly RatPoly::shifted_up(std::size_t k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Rat> r(c_.size() + k);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return RatPoly(std::move(r));
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

RatPoly RatPoly::taylor_shift(const Rat& a) const {
    if (is_zero() || a == 0) return *this;
    std::vector<Rat> r(c_);
    const std::size_t n = r.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = n - 1; j-- > k;) r[j] += a * r[j + 1];
    return RatPoly(std::move(r));
}

RatPoly RatPoly::scale_arg(const Rat& s) const {
    std::vector<Rat> r(c_);
    Rat p(1);
    for (std::size_t i = 1; i < r.size(); ++i) {
        p *= s;
        r[i] *= p;
    }
    return RatPoly(std::move(r));
}

RatPoly RatPoly::reversed() const {
    std::vector<Rat> r(c_.rbegin(), c_.rend());
    return RatPoly(std::move(r));
}

RatPoly RatPoly::subst_x_squared() const {
    if (is_zero()) return RatPoly();
    std::vector<Rat> r(2 * c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
    return RatPoly(std::move(r));
}

Rat RatPoly::one_norm() const {
    Rat s(0);
    for (const auto& v : c_) s += abs(v);
    return s;
}

Rat RatPoly::inf_norm() const {
    Rat best(0);
    for (const auto& v : c_) {
        Rat a = abs(v);
        if (a > best) best = a;
    }
    return best;
}

std::size_t RatPoly::tau() const {
    std::size_t t = 1;
    for (const auto& v : c_) t = std::max(t, bitsize(v));
    return t;
}

std::string RatPoly::to_string() const { return format_poly(*this); }

// ---------------------------------------------------------------------------
// Integer multiplication kernels.

namespace {

constexpr std::size_t kKaratsubaThreshold = 32;

std::vector<Int> school_serial(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

std::vector<Int> school_parallel(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size() + b.size() - 1);
    const long n = static_cast<long>(r.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (long k = 0; k < n; ++k) {
        Int acc(0);
        const long lo = std::max(0L, k - static_cast<long>(b.size()) + 1);
        const long hi = std::min(k, static_cast<long>(a.size()) - 1);
        for (long i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
        r[k] = std::move(acc);
    }
    return r;
}

void add_into(std::vector<Int>& dst, const std::vector<Int>& src, std::size_t at) {
    if (dst.size() < at + src.size()) dst.resize(at + src.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst[at + i] += src[i];
}

void sub_into(std::vector<Int>& dst, const std::vector<Int>& src, std::size_t at) {
    if (dst.size() < at + src.size()) dst.resize(at + src.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst[at + i] -= src[i];
}

std::vector<Int> kara(const std::vector<Int>& a, const std::vector<Int>& b, int spawn_depth) {
    if (std::min(a.size(), b.size()) < kKaratsubaThreshold) return school_serial(a, b);
    const std::size_t h = std::max(a.size(), b.size()) / 2;
    std::vector<Int> a0(a.begin(), a.begin() + std::min(h, a.size()));
    std::vector<Int> a1(a.begin() + std::min(h, a.size()), a.end());
    std::vector<Int> b0(b.begin(), b.begin() + std::min(h, b.size()));
    std::vector<Int> b1(b.begin() + std::min(h, b.size()), b.end());
    if (a1.empty()) a1.push_back(Int(0));
    if (b1.empty()) b1.push_back(Int(0));

    std::vector<Int> s_a(a0), s_b(b0);
    add_into(s_a, a1, 0);
    add_into(s_b, b1, 0);

    std::vector<Int> z0, z2, z1;
    if (spawn_depth > 0) {
#ifdef _OPENMP
#pragma omp taskgroup
        {
#pragma omp task shared(z0)
            z0 = kara(a0, b0, spawn_depth - 1);
#pragma omp task shared(z2)
            z2 = kara(a1, b1, spawn_depth - 1);
            z1 = kara(s_a, s_b, spawn_depth - 1);
        }
#else
        z0 = kara(a0, b0, 0);
        z2 = kara(a1, b1, 0);
        z1 = kara(s_a, s_b, 0);
#endif
    } else {
        z0 = kara(a0, b0, 0);
        z2 = kara(a1, b1, 0);
        z1 = kara(s_a, s_b, 0);
    }
    sub_into(z1, z0, 0);
    sub_into(z1, z2, 0);

    std::vector<Int> r(a.size() + b.size() - 1);
    add_into(r, z0, 0);
    add_into(r, z1, h);
    add_into(r, z2, 2 * h);
    r.resize(a.size() + b.size() - 1);
    return r;
}

} // namespace

std::vector<Int> int_poly_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                              exec::Policy policy) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKaratsubaThreshold) {
        // Parallelizing tiny products costs more than it saves.
        if (policy == exec::Policy::parallel && a.size() + b.size() > 256)
            return school_parallel(a, b);
        return school_serial(a, b);
    }
    if (policy == exec::Policy::parallel && exec::max_threads() > 1) {
#ifdef _OPENMP
        std::vector<Int> r;
#pragma omp parallel
#pragma omp single
        r = kara(a, b, 3);
        return r;
#endif
    }
    return kara(a, b, 0);
}

std::pair<std::vector<Int>, Int> to_integer_scaled(const RatPoly& a) {
    Int denom(1);
    for (const auto& v : a.coeffs()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<Int> r(a.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Rat& v = a.coeffs()[i];
        r[i] = v.get_num() * (denom / v.get_den());
    }
    return {std::move(r), std::move(denom)};
}

RatPoly from_integer_scaled(const std::vector<Int>& coeffs, const Int& denom) {
    std::vector<Rat> r(coeffs.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        Rat q;
        q.get_num() = coeffs[i];
        q.get_den() = denom;
        q.canonicalize();
        r[i] = std::move(q);
    }
    return RatPoly(std::move(r));
}

RatPoly mul(const RatPoly& a, const RatPoly& b, exec::Policy policy) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    auto [ia, da] = to_integer_scaled(a);
    auto [ib, db] = to_integer_scaled(b);
    std::vector<Int> prod = int_poly_mul(ia, ib, policy);
    return from_integer_scaled(prod, da * db);
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    return mul(a, b, exec::default_policy());
}

std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw arith_error("polynomial division by zero");
    std::vector<Rat> rem(a.coeffs());
    const long db = b.degree();
    long dr = a.degree();
    if (dr < db) return {RatPoly(), a};
    std::vector<Rat> quo(dr - db + 1);
    const Rat& blc = b.lc();
    while (dr >= db) {
        Rat q = rem[dr] / blc;
        quo[dr - db] = q;
        for (long i = 0; i <= db; ++i) rem[dr - db + i] -= q * b.coeff(i);
        rem[dr] = 0;
        while (dr >= 0 && rem[dr] == 0) --dr;
        if (dr < 0) break;
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw internal_error("exact_div has nonzero remainder");
    return q;
}

std::pair<Rat, Rat> eval_complex(const RatPoly& a, const DyadicComplex& z) {
    if (a.is_zero()) return {Rat(0), Rat(0)};
    auto [ic, denom] = to_integer_scaled(a);
    const long d = static_cast<long>(ic.size()) - 1;
    // Common exponent for both coordinates.
    long e = std::max(z.re.e, z.im.e);
    Int zr = z.re.m << (e - z.re.e);
    Int zi = z.im.m << (e - z.im.e);
    // Horner in scaled Gaussian integers: value = H * 2^-(d*e) / denom.
    Int hr = ic[d], hi = 0;
    for (long k = d - 1; k >= 0; --k) {
        Int nr = hr * zr - hi * zi;
        Int ni = hr * zi + hi * zr;
        nr += ic[k] << (static_cast<unsigned long>(d - k) * static_cast<unsigned long>(e));
        hr = std::move(nr);
        hi = std::move(ni);
    }
    Int scale = denom;
    scale <<= static_cast<unsigned long>(d) * static_cast<unsigned long>(e);
    Rat re, im;
    re.get_num() = hr;
    re.get_den() = scale;
    re.canonicalize();
    im.get_num() = hi;
    im.get_den() = scale;
    im.canonicalize();
    return {std::move(re), std::move(im)};
}

Rat eval_dyadic(const RatPoly& a, const Dyadic& x) {
    auto [re, im] = eval_complex(a, DyadicComplex(x, Dyadic()));
    (void)im;
    return re;
}

Rat root_magnitude_bound(const RatPoly& a) {
    if (a.degree() < 1) throw domain_error("root bound needs degree >= 1");
    return Rat(2) * a.inf_norm() / abs(a.lc());
}

std::pair<RatPoly, long> scale_to_unit_lc(const RatPoly& a) {
    if (a.is_zero() || a.lc() <= 0) throw domain_error("scale_to_unit_lc needs positive lc");
    const Rat& l = a.lc();
    long k = floor_lg(l);
    if (pow2_rat(k) != l) ++k; // ceil(lg lc)
    return {a.scaled(pow2_rat(-k)), k};
}

std::pair<long, long> min_eval_bounds(long d, long tau) {
    const long lg = lg_of_degree(d);
    return {-(4 * d * tau + 16 * d * lg), 2 * d * tau + 8 * d * lg};
}

long floor_lg_inf_norm(const RatPoly& a) {
    if (a.is_zero()) throw domain_error("floor_lg_inf_norm of zero polynomial");
    return floor_lg(a.inf_norm());
}

// ---------------------------------------------------------------------------
// Text formats.

namespace {

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit ExprParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg, "position " + std::to_string(pos + 1));
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= s.size();
    }

    char peek() const { return s[pos]; }

    Int parse_uint() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return Int(s.substr(start, pos - start), 10);
    }

    Rat parse_number() {
        Int num = parse_uint();
        skip_ws();
        Rat q(num);
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            skip_ws();
            Int den = parse_uint();
            if (den == 0) fail("zero denominator");
            q.get_den() = den;
            q.canonicalize();
        }
        return q;
    }

    // coefficient and exponent of one term
    std::pair<Rat, unsigned long> parse_term() {
        skip_ws();
        Rat coef(1);
        bool have_coef = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coef = parse_number();
            have_coef = true;
        }
        skip_ws();
        if (pos < s.size() && s[pos] == '*') {
            if (!have_coef) fail("unexpected '*'");
            ++pos;
            skip_ws();
        }
        unsigned long expo = 0;
        if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            if (s[pos] != 'x') fail(std::string("unknown variable '") + s[pos] + "' (only x is allowed)");
            ++pos;
            if (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                if (s[pos] != '^') fail("unexpected character after 'x'");
            }
            skip_ws();
            expo = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                skip_ws();
                Int e = parse_uint();
                if (!e.fits_ulong_p()) fail("exponent too large");
                expo = e.get_ui();
            }
        } else if (!have_coef) {
            fail(pos < s.size() ? std::string("unexpected character '") + s[pos] + "'"
                                : std::string("expected a term"));
        }
        return {coef, expo};
    }

    RatPoly parse() {
        std::vector<Rat> coeffs;
        bool first = true;
        while (!eof()) {
            int sign = 1;
            skip_ws();
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            auto [coef, expo] = parse_term();
            if (sign < 0) coef = -coef;
            if (coeffs.size() <= expo) coeffs.resize(expo + 1);
            coeffs[expo] += coef;
            first = false;
        }
        if (first) fail("empty polynomial");
        return RatPoly(std::move(coeffs));
    }
};

} // namespace

RatPoly parse_poly(const std::string& text) {
    if (text.find('x') != std::string::npos) return ExprParser(text).parse();
    // Coefficient list, ascending.
    std::istringstream in(text);
    std::vector<Rat> coeffs;
    std::string tok;
    while (in >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        coeffs.push_back(parse_rational(tok));
    }
    if (coeffs.empty()) throw parse_error("empty polynomial", "");
    return RatPoly(std::move(coeffs));
}

std::string format_poly(const RatPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (long k = a.degree(); k >= 0; --k) {
        const Rat& c = a.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        Rat mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const bool unit = (mag == 1) && k > 0;
        if (!unit) out += format_rational(mag);
        if (k > 0) {
            if (!unit) out += "*";
            out += "x";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

} // namespace upos
