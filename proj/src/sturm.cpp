#include "upos/sturm.hpp"

#include "upos/errors.hpp"

namespace upos {

namespace zp {

void trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

void make_primitive(ZPoly& f) {
    trim(f);
    if (f.empty()) return;
    Int content(0);
    for (const auto& c : f) {
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content == 1) return;
    }
    for (auto& c : f) c /= content;
}

ZPoly from_rat(const RatPoly& a) {
    auto [f, denom] = to_integer_scaled(a);
    (void)denom; // positive, so the sign pattern is preserved
    make_primitive(f);
    return f;
}

RatPoly to_rat(const ZPoly& f) {
    std::vector<Rat> c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = Rat(f[i]);
    return RatPoly(std::move(c));
}

ZPoly derivative(const ZPoly& f) {
    if (f.size() <= 1) return {};
    ZPoly r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<long>(i);
    return r;
}

long degree(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

int sign_at(const ZPoly& f, const Rat& t) {
    if (f.empty()) return 0;
    // f(p/q) has the sign of sum f_k p^k q^(d-k).
    const Int& p = t.get_num();
    const Int& q = t.get_den();
    Int acc(0);
    for (std::size_t i = f.size(); i-- > 0;) {
        acc *= p;
        Int term = f[i];
        for (std::size_t j = i; j + 1 < f.size(); ++j) term *= q;
        acc += term;
    }
    return sgn(acc);
}

int sign_at_pos_inf(const ZPoly& f) { return f.empty() ? 0 : sgn(f.back()); }

int sign_at_neg_inf(const ZPoly& f) {
    if (f.empty()) return 0;
    int s = sgn(f.back());
    return (degree(f) % 2 == 0) ? s : -s;
}

ZPoly pseudo_rem(const ZPoly& f, const ZPoly& g, long& delta) {
    if (g.empty()) throw arith_error("pseudo-remainder by zero");
    const long df = degree(f), dg = degree(g);
    delta = df - dg + 1;
    if (df < dg) {
        delta = 0;
        return f;
    }
    ZPoly r(f);
    const Int& glc = g.back();
    long performed = 0;
    for (long k = df; k >= dg; --k) {
        // Invariant: r is glc^performed * f reduced below degree k+1.
        Int lead = r[k];
        for (auto& c : r) c *= glc;
        ++performed;
        if (lead != 0) {
            for (long i = 0; i <= dg; ++i) r[k - dg + i] -= lead * g[i];
        }
        r[k] = 0;
    }
    // Top up to the canonical exponent so the sign convention is predictable.
    while (performed < delta) {
        for (auto& c : r) c *= glc;
        ++performed;
    }
    trim(r);
    return r;
}

} // namespace zp

SturmChain SturmChain::build(const RatPoly& a) {
    if (a.is_zero()) throw domain_error("Sturm chain of zero polynomial");
    SturmChain chain;
    zp::ZPoly f = zp::from_rat(a);
    chain.seq.push_back(f);
    zp::ZPoly g = zp::derivative(f);
    zp::make_primitive(g);
    while (!g.empty()) {
        chain.seq.push_back(g);
        long delta = 0;
        zp::ZPoly r = zp::pseudo_rem(f, g, delta);
        if (r.empty()) break;
        // lc(g)^delta * f = q*g + r, so the true remainder is r / lc(g)^delta.
        // The successor must be minus the remainder up to a positive factor.
        const bool flip = !(delta % 2 == 1 && g.back() < 0);
        zp::make_primitive(r);
        if (flip)
            for (auto& c : r) c = -c;
        f = std::move(g);
        g = std::move(r);
    }
    return chain;
}

namespace {

int count_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

} // namespace

int SturmChain::variations_at(const Rat& t) const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& f : seq) signs.push_back(zp::sign_at(f, t));
    return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& f : seq) signs.push_back(zp::sign_at_pos_inf(f));
    return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& f : seq) signs.push_back(zp::sign_at_neg_inf(f));
    return count_variations(signs);
}

long sturm_count_real_roots(const RatPoly& a) {
    return sturm_count_real_roots(a, std::nullopt, std::nullopt);
}

long sturm_count_real_roots(const RatPoly& a, const std::optional<Rat>& lo,
                            const std::optional<Rat>& hi) {
    if (a.is_zero()) throw domain_error("root count of zero polynomial");
    if (lo && hi && !(*lo < *hi)) throw domain_error("empty interval for root count");
    RatPoly f = a;
    // Divide out endpoint roots so V(lo) - V(hi), which counts (lo, hi],
    // gives the open-interval count.
    for (const auto& endpoint : {lo, hi}) {
        if (!endpoint) continue;
        RatPoly lin({-*endpoint, Rat(1)});
        while (f.degree() >= 1 && f.eval(*endpoint) == 0) f = exact_div(f, lin);
    }
    if (f.degree() <= 0) return 0;
    SturmChain chain = SturmChain::build(f);
    const int va = lo ? chain.variations_at(*lo) : chain.variations_at_neg_inf();
    const int vb = hi ? chain.variations_at(*hi) : chain.variations_at_pos_inf();
    return va - vb;
}

} // namespace upos
