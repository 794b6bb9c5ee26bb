#include "upos/arith.hpp"

#include <cctype>

namespace upos {

Rat pow2_rat(long k) {
    Rat r(1);
    if (k >= 0) {
        mpz_ui_pow_ui(r.get_num().get_mpz_t(), 2, static_cast<unsigned long>(k));
    } else {
        mpz_ui_pow_ui(r.get_den().get_mpz_t(), 2, static_cast<unsigned long>(-k));
    }
    return r;
}

long floor_lg(const Rat& q) {
    if (q <= 0) throw arith_error("floor_lg requires a positive argument");
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    long e = static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(den));
    // e or e-1; test num >= den * 2^e.
    Int lhs = num, rhs = den;
    if (e >= 0)
        rhs <<= e;
    else
        lhs <<= -e;
    return lhs >= rhs ? e : e - 1;
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

Rat parse_rational(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw parse_error("empty rational", "");
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
        neg = (s[pos] == '-');
        ++pos;
    }
    std::size_t slash = s.find('/', pos);
    std::string num_part = (slash == std::string::npos) ? s.substr(pos) : s.substr(pos, slash - pos);
    if (!all_digits(num_part, 0, num_part.size()))
        throw parse_error("invalid rational '" + text + "'", "");
    Int num(num_part, 10);
    Int den(1);
    if (slash != std::string::npos) {
        std::string den_part = s.substr(slash + 1);
        if (!all_digits(den_part, 0, den_part.size()))
            throw parse_error("invalid rational '" + text + "'", "");
        den = Int(den_part, 10);
        if (den == 0) throw parse_error("zero denominator in '" + text + "'", "");
    }
    Rat q;
    q.get_num() = neg ? Int(-num) : num;
    q.get_den() = den;
    q.canonicalize();
    return q;
}

std::string format_rational(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat Dyadic::to_rational() const {
    Rat q;
    q.get_num() = m;
    mpz_ui_pow_ui(q.get_den().get_mpz_t(), 2, static_cast<unsigned long>(e));
    q.canonicalize();
    return q;
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    long e = std::max(a.e, b.e);
    Int ma = a.m, mb = b.m;
    if (a.e < e) ma <<= (e - a.e);
    if (b.e < e) mb <<= (e - b.e);
    return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    long e = std::max(a.e, b.e);
    Int ma = a.m, mb = b.m;
    if (a.e < e) ma <<= (e - a.e);
    if (b.e < e) mb <<= (e - b.e);
    return Dyadic(ma - mb, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.m * b.m, a.e + b.e);
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
    long e = std::max(a.e, b.e);
    Int ma = a.m, mb = b.m;
    if (a.e < e) ma <<= (e - a.e);
    if (b.e < e) mb <<= (e - b.e);
    return ::cmp(ma, mb);
}

Dyadic round_to_dyadic(const Rat& q, long prec) {
    if (prec < 0) throw arith_error("round_to_dyadic requires prec >= 0");
    Int t = q.get_num();
    t <<= prec;
    Int quo, rem;
    mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), q.get_den().get_mpz_t());
    // rem in [0, den); round half to even mantissa.
    Int twice = rem << 1;
    int c = ::cmp(twice, q.get_den());
    if (c > 0 || (c == 0 && mpz_odd_p(quo.get_mpz_t()))) quo += 1;
    return Dyadic(std::move(quo), prec);
}

Dyadic dyadic_from_rational_exact(const Rat& q) {
    const Int& den = q.get_den();
    if (mpz_popcount(den.get_mpz_t()) != 1)
        throw arith_error("rational " + format_rational(q) + " is not dyadic");
    long e = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
    return Dyadic(q.get_num(), e);
}

std::string format_dyadic(const Dyadic& d) {
    return d.m.get_str() + "*2^-" + std::to_string(d.e);
}

Dyadic parse_dyadic(const std::string& text) {
    std::string s = strip(text);
    std::size_t star = s.find("*2^-");
    if (star == std::string::npos)
        throw parse_error("invalid dyadic '" + text + "' (expected m*2^-e)", "");
    std::string mant = s.substr(0, star);
    std::string expo = s.substr(star + 4);
    std::size_t mpos = 0;
    if (!mant.empty() && (mant[0] == '+' || mant[0] == '-')) mpos = 1;
    if (!all_digits(mant, mpos, mant.size()) || !all_digits(expo, 0, expo.size()))
        throw parse_error("invalid dyadic '" + text + "'", "");
    Int m(mant, 10);
    long e = std::stol(expo);
    return Dyadic(std::move(m), e);
}

std::size_t bitsize(const Dyadic& d) {
    return bitsize(d.to_rational());
}

long lg_of_degree(long d) {
    long v = std::max(d, 2L);
    // ceil(log2(v))
    unsigned long bits = mpz_sizeinbase(Int(v).get_mpz_t(), 2);
    bool pow2 = (v & (v - 1)) == 0;
    return static_cast<long>(pow2 ? bits - 1 : bits);
}

} // namespace upos
