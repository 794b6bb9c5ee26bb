#include "upos/dypoly.hpp"

#include <algorithm>

namespace upos {

namespace {

constexpr std::size_t kThreshold = 32;

void trim(DyCVec& a) {
    while (!a.empty() && a.back().re.m == 0 && a.back().im.m == 0) a.pop_back();
}

DyCVec school(const DyCVec& a, const DyCVec& b) {
    DyCVec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

void add_into(DyCVec& dst, const DyCVec& src, std::size_t at) {
    if (dst.size() < at + src.size()) dst.resize(at + src.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst[at + i] = dst[at + i] + src[i];
}

void sub_into(DyCVec& dst, const DyCVec& src, std::size_t at) {
    if (dst.size() < at + src.size()) dst.resize(at + src.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst[at + i] = dst[at + i] - src[i];
}

DyCVec kara(const DyCVec& a, const DyCVec& b, int spawn_depth) {
    if (std::min(a.size(), b.size()) < kThreshold) return school(a, b);
    const std::size_t h = std::max(a.size(), b.size()) / 2;
    DyCVec a0(a.begin(), a.begin() + std::min(h, a.size()));
    DyCVec a1(a.begin() + std::min(h, a.size()), a.end());
    DyCVec b0(b.begin(), b.begin() + std::min(h, b.size()));
    DyCVec b1(b.begin() + std::min(h, b.size()), b.end());
    if (a1.empty()) a1.emplace_back();
    if (b1.empty()) b1.emplace_back();

    DyCVec s_a(a0), s_b(b0);
    add_into(s_a, a1, 0);
    add_into(s_b, b1, 0);

    DyCVec z0, z2, z1;
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

    DyCVec r(a.size() + b.size() - 1);
    add_into(r, z0, 0);
    add_into(r, z1, h);
    add_into(r, z2, 2 * h);
    r.resize(a.size() + b.size() - 1);
    return r;
}

} // namespace

DyCVec dyc_mul(const DyCVec& a, const DyCVec& b, exec::Policy policy) {
    DyCVec ta(a), tb(b);
    trim(ta);
    trim(tb);
    if (ta.empty() || tb.empty()) return {};
    if (policy == exec::Policy::parallel && exec::max_threads() > 1 &&
        std::min(ta.size(), tb.size()) >= kThreshold) {
#ifdef _OPENMP
        DyCVec r;
#pragma omp parallel
#pragma omp single
        r = kara(ta, tb, 3);
        return r;
#endif
    }
    return kara(ta, tb, 0);
}

DyCVec dyc_product_tree(std::vector<DyCVec> leaves, exec::Policy policy) {
    (void)policy; // consulted only in OpenMP builds
    if (leaves.empty()) return {DyadicComplex(Dyadic(Int(1), 0), Dyadic())};
    while (leaves.size() > 1) {
        std::vector<DyCVec> next;
        next.reserve(leaves.size() / 2 + 1);
        const std::size_t pairs = leaves.size() / 2;
        next.resize(pairs);
#ifdef _OPENMP
        const bool par = policy == exec::Policy::parallel && exec::max_threads() > 1;
#pragma omp parallel for schedule(dynamic, 1) if (par)
#endif
        for (std::size_t i = 0; i < pairs; ++i)
            next[i] = dyc_mul(leaves[2 * i], leaves[2 * i + 1], exec::Policy::serial);
        if (leaves.size() % 2 == 1) next.push_back(std::move(leaves.back()));
        leaves = std::move(next);
    }
    return leaves[0];
}

std::pair<RatPoly, RatPoly> dyc_to_rat(const DyCVec& a) {
    std::vector<Rat> re(a.size()), im(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        re[i] = a[i].re.to_rational();
        im[i] = a[i].im.to_rational();
    }
    return {RatPoly(std::move(re)), RatPoly(std::move(im))};
}

} // namespace upos
