#include "upos/roots.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <string>

#include "upos/errors.hpp"
#include "upos/squarefree.hpp"
#include "upos/sturm.hpp"

namespace upos {

namespace {

// ---------------------------------------------------------------------------
// Minimal RAII vector of mpfr numbers.

struct MVec {
    std::vector<__mpfr_struct> v;
    MVec(std::size_t n, mpfr_prec_t p) : v(n) {
        for (auto& s : v) {
            mpfr_init2(&s, p);
            mpfr_set_ui(&s, 0, MPFR_RNDN);
        }
    }
    ~MVec() {
        for (auto& s : v) mpfr_clear(&s);
    }
    MVec(const MVec&) = delete;
    MVec& operator=(const MVec&) = delete;
    mpfr_ptr operator[](std::size_t i) { return &v[i]; }
    mpfr_srcptr operator[](std::size_t i) const { return &v[i]; }
    std::size_t size() const { return v.size(); }
};

Rat rat_from_mpfr(mpfr_srcptr x) {
    Rat q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

Dyadic dyadic_from_mpfr(mpfr_srcptr x, long round_prec) {
    if (mpfr_zero_p(x)) return Dyadic();
    return round_to_dyadic(rat_from_mpfr(x), round_prec);
}

Dyadic dyadic_pow2(long e) {
    if (e >= 0) return Dyadic(Int(1) << e, 0);
    return Dyadic(Int(1), -e);
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich simultaneous iteration at fixed working precision.
// Returns approximations as exact rational snapshots, or nothing when the
// iteration failed to settle (caller doubles the precision).

class AberthEngine {
  public:
    AberthEngine(const zp::ZPoly& f, mpfr_prec_t prec)
        : d_(zp::degree(f)), prec_(prec), a_(f.size(), prec), da_(f.size() - 1, prec),
          zr_(d_, prec), zi_(d_, prec), t_(12, prec) {
        for (std::size_t k = 0; k < f.size(); ++k) mpfr_set_z(a_[k], f[k].get_mpz_t(), MPFR_RNDN);
        for (long k = 1; k <= d_; ++k) {
            mpfr_mul_si(da_[k - 1], a_[k], k, MPFR_RNDN);
        }
    }

    long degree() const { return d_; }

    void init_circle(double angle_offset) {
        // Radius |a0/ad|^(1/d); a0 != 0 because zero roots are stripped first.
        mpfr_ptr r = t_[0], th = t_[1], pi2 = t_[2];
        mpfr_div(r, a_[0], a_[static_cast<std::size_t>(d_)], MPFR_RNDN);
        mpfr_abs(r, r, MPFR_RNDN);
        mpfr_rootn_ui(r, r, static_cast<unsigned long>(d_), MPFR_RNDN);
        if (mpfr_zero_p(r) || !mpfr_number_p(r)) mpfr_set_ui(r, 1, MPFR_RNDN);
        mpfr_const_pi(pi2, MPFR_RNDN);
        mpfr_mul_ui(pi2, pi2, 2, MPFR_RNDN);
        for (long i = 0; i < d_; ++i) {
            mpfr_mul_d(th, pi2, (static_cast<double>(i) + angle_offset) / static_cast<double>(d_),
                       MPFR_RNDN);
            mpfr_add_d(th, th, 0.7, MPFR_RNDN);
            mpfr_cos(zr_[i], th, MPFR_RNDN);
            mpfr_sin(zi_[i], th, MPFR_RNDN);
            mpfr_mul(zr_[i], zr_[i], r, MPFR_RNDN);
            mpfr_mul(zi_[i], zi_[i], r, MPFR_RNDN);
        }
    }

    void warm_start(const std::vector<std::pair<Rat, Rat>>& pts) {
        for (long i = 0; i < d_ && i < static_cast<long>(pts.size()); ++i) {
            mpfr_set_q(zr_[i], pts[i].first.get_mpq_t(), MPFR_RNDN);
            mpfr_set_q(zi_[i], pts[i].second.get_mpq_t(), MPFR_RNDN);
        }
    }

    // One Gauss-Seidel sweep; returns the max step exponent (steps bounded by
    // 2^result), or LONG_MAX on numeric breakdown.
    long sweep() {
        long max_e = LONG_MIN;
        for (long i = 0; i < d_; ++i) {
            mpfr_ptr pr = t_[0], pi = t_[1], qr = t_[2], qi = t_[3];
            eval_pq(i, pr, pi, qr, qi);
            if (mpfr_zero_p(pr) && mpfr_zero_p(pi)) continue; // sitting on a root
            mpfr_ptr nr = t_[4], ni = t_[5];
            if (!cdiv(nr, ni, pr, pi, qr, qi)) return LONG_MAX;
            // S = sum over j != i of 1/(z_i - z_j)
            mpfr_ptr sr = t_[6], si = t_[7], dr = t_[8], di = t_[9];
            mpfr_set_ui(sr, 0, MPFR_RNDN);
            mpfr_set_ui(si, 0, MPFR_RNDN);
            for (long j = 0; j < d_; ++j) {
                if (j == i) continue;
                mpfr_sub(dr, zr_[i], zr_[j], MPFR_RNDN);
                mpfr_sub(di, zi_[i], zi_[j], MPFR_RNDN);
                if (mpfr_zero_p(dr) && mpfr_zero_p(di)) return LONG_MAX; // collided points
                mpfr_ptr den = t_[10], tmp = t_[11];
                mpfr_sqr(den, dr, MPFR_RNDN);
                mpfr_sqr(tmp, di, MPFR_RNDN);
                mpfr_add(den, den, tmp, MPFR_RNDN);
                mpfr_div(dr, dr, den, MPFR_RNDN);
                mpfr_div(di, di, den, MPFR_RNDN);
                mpfr_add(sr, sr, dr, MPFR_RNDN);
                mpfr_sub(si, si, di, MPFR_RNDN);
            }
            // w = N / (1 - N*S); fall back to a plain Newton step if the
            // denominator vanishes.
            mpfr_ptr er = t_[8], ei = t_[9];
            cmul(er, ei, nr, ni, sr, si, t_[10], t_[11]);
            mpfr_ui_sub(er, 1, er, MPFR_RNDN);
            mpfr_neg(ei, ei, MPFR_RNDN);
            mpfr_ptr wr = t_[6], wi = t_[7];
            if (mpfr_zero_p(er) && mpfr_zero_p(ei)) {
                mpfr_set(wr, nr, MPFR_RNDN);
                mpfr_set(wi, ni, MPFR_RNDN);
            } else if (!cdiv(wr, wi, nr, ni, er, ei)) {
                return LONG_MAX;
            }
            mpfr_sub(zr_[i], zr_[i], wr, MPFR_RNDN);
            mpfr_sub(zi_[i], zi_[i], wi, MPFR_RNDN);
            if (!mpfr_number_p(zr_[i]) || !mpfr_number_p(zi_[i])) return LONG_MAX;
            long e = LONG_MIN;
            if (!mpfr_zero_p(wr)) e = std::max(e, static_cast<long>(mpfr_get_exp(wr)));
            if (!mpfr_zero_p(wi)) e = std::max(e, static_cast<long>(mpfr_get_exp(wi)));
            max_e = std::max(max_e, e);
        }
        return max_e == LONG_MIN ? LONG_MIN : max_e;
    }

    std::vector<std::pair<Rat, Rat>> snapshot() const {
        std::vector<std::pair<Rat, Rat>> out;
        out.reserve(static_cast<std::size_t>(d_));
        for (long i = 0; i < d_; ++i) out.emplace_back(rat_from_mpfr(zr_[i]), rat_from_mpfr(zi_[i]));
        return out;
    }

    std::vector<DyadicComplex> rounded(long prec) const {
        std::vector<DyadicComplex> out;
        out.reserve(static_cast<std::size_t>(d_));
        for (long i = 0; i < d_; ++i)
            out.emplace_back(dyadic_from_mpfr(zr_[i], prec), dyadic_from_mpfr(zi_[i], prec));
        return out;
    }

  private:
    void eval_pq(long i, mpfr_ptr pr, mpfr_ptr pi, mpfr_ptr qr, mpfr_ptr qi) {
        mpfr_set(pr, a_[static_cast<std::size_t>(d_)], MPFR_RNDN);
        mpfr_set_ui(pi, 0, MPFR_RNDN);
        mpfr_set_ui(qr, 0, MPFR_RNDN);
        mpfr_set_ui(qi, 0, MPFR_RNDN);
        for (long k = d_ - 1; k >= 0; --k) {
            cmul(t_[4], t_[5], qr, qi, zr_[i], zi_[i], t_[10], t_[11]);
            mpfr_add(qr, t_[4], pr, MPFR_RNDN);
            mpfr_add(qi, t_[5], pi, MPFR_RNDN);
            cmul(t_[4], t_[5], pr, pi, zr_[i], zi_[i], t_[10], t_[11]);
            mpfr_add(pr, t_[4], a_[static_cast<std::size_t>(k)], MPFR_RNDN);
            mpfr_set(pi, t_[5], MPFR_RNDN);
        }
    }

    static void cmul(mpfr_ptr rr, mpfr_ptr ri, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br,
                     mpfr_srcptr bi, mpfr_ptr u, mpfr_ptr v) {
        mpfr_mul(u, ar, br, MPFR_RNDN);
        mpfr_mul(v, ai, bi, MPFR_RNDN);
        mpfr_sub(u, u, v, MPFR_RNDN);
        mpfr_mul(v, ar, bi, MPFR_RNDN);
        mpfr_set(rr, u, MPFR_RNDN);
        mpfr_mul(u, ai, br, MPFR_RNDN);
        mpfr_add(ri, u, v, MPFR_RNDN);
    }

    // rr + i*ri = (ar + i*ai) / (br + i*bi); false if the divisor is zero or
    // the result is not finite.
    bool cdiv(mpfr_ptr rr, mpfr_ptr ri, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br,
              mpfr_srcptr bi) {
        mpfr_ptr den = t_[10], u = t_[11];
        mpfr_sqr(den, br, MPFR_RNDN);
        mpfr_sqr(u, bi, MPFR_RNDN);
        mpfr_add(den, den, u, MPFR_RNDN);
        if (mpfr_zero_p(den) || !mpfr_number_p(den)) return false;
        mpfr_mul(u, ar, br, MPFR_RNDN);
        mpfr_set(rr, u, MPFR_RNDN);
        mpfr_mul(u, ai, bi, MPFR_RNDN);
        mpfr_add(rr, rr, u, MPFR_RNDN);
        mpfr_div(rr, rr, den, MPFR_RNDN);
        mpfr_mul(u, ai, br, MPFR_RNDN);
        mpfr_set(ri, u, MPFR_RNDN);
        mpfr_mul(u, ar, bi, MPFR_RNDN);
        mpfr_sub(ri, ri, u, MPFR_RNDN);
        mpfr_div(ri, ri, den, MPFR_RNDN);
        return mpfr_number_p(rr) && mpfr_number_p(ri);
    }

    long d_;
    mpfr_prec_t prec_;
    MVec a_, da_;
    MVec zr_, zi_;
    MVec t_;
};

// ---------------------------------------------------------------------------
// Exact certification.

struct Classified {
    std::vector<Dyadic> reals;
    std::vector<std::pair<Dyadic, Dyadic>> pairs; // delta > 0
};

// Sort approximations into real candidates and conjugate pairs. Empty result
// means the configuration is not conjugate-symmetric enough yet.
bool symmetrize(std::vector<DyadicComplex> zs, long kappa, Classified& out) {
    out.reals.clear();
    out.pairs.clear();
    const Dyadic thr = dyadic_pow2(-(kappa + 4));
    std::vector<DyadicComplex> ups, downs;
    for (auto& z : zs) {
        if (z.im.abs() <= thr)
            out.reals.push_back(z.re);
        else if (z.im.sign() > 0)
            ups.push_back(z);
        else
            downs.push_back(z);
    }
    if (ups.size() != downs.size()) return false;
    std::vector<bool> used(downs.size(), false);
    for (const auto& u : ups) {
        long best = -1;
        Dyadic best_d2;
        for (std::size_t j = 0; j < downs.size(); ++j) {
            if (used[j]) continue;
            DyadicComplex diff = u - downs[j].conj();
            Dyadic d2 = diff.norm2();
            if (best < 0 || d2 < best_d2) {
                best = static_cast<long>(j);
                best_d2 = d2;
            }
        }
        if (best < 0) return false;
        used[static_cast<std::size_t>(best)] = true;
        const DyadicComplex& v = downs[static_cast<std::size_t>(best)];
        Dyadic gamma = (u.re + v.re) * Dyadic(Int(1), 1);       // mean, exact
        Dyadic delta = (u.im - v.im) * Dyadic(Int(1), 1);       // half the gap, exact
        if (!(delta.sign() > 0)) return false;
        out.pairs.emplace_back(std::move(gamma), std::move(delta));
    }
    std::sort(out.reals.begin(), out.reals.end());
    std::sort(out.pairs.begin(), out.pairs.end());
    return true;
}

// Exact inclusion-disk certification against the original polynomial.
// On success fills disks (reals first, then each pair as +delta, -delta) and
// the achieved kappa.
bool certify(const RatPoly& a, const RatPoly& da, const Classified& cand, long kappa,
             std::vector<RootDisk>& disks, long& achieved) {
    const long d = a.degree();
    if (static_cast<long>(cand.reals.size() + 2 * cand.pairs.size()) != d) return false;
    std::vector<DyadicComplex> centers;
    centers.reserve(static_cast<std::size_t>(d));
    for (const auto& r : cand.reals) centers.emplace_back(r, Dyadic());
    for (const auto& [g, dl] : cand.pairs) {
        centers.emplace_back(g, dl);
        centers.emplace_back(g, -dl);
    }
    const Rat d2 = Rat(d) * Rat(d);
    std::vector<long> e(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        auto [ar, ai] = eval_complex(a, centers[i]);
        Rat na = ar * ar + ai * ai;
        if (na == 0) {
            // The center is exactly a root; any tiny disk contains it.
            e[i] = -(kappa + 64);
        } else {
            auto [br, bi] = eval_complex(da, centers[i]);
            Rat nb = br * br + bi * bi;
            if (nb == 0) return false;
            // Smallest integer exponent with 2^(2e) >= d^2 |A|^2 / |A'|^2;
            // the nearest root is then within 2^e of the center.
            Rat ratio = d2 * na / nb;
            long l = floor_lg(ratio);
            long two_e = (pow2_rat(l) == ratio) ? l : l + 1;
            e[i] = two_e >= 0 ? (two_e + 1) / 2 : -((-two_e) / 2);
        }
        if (e[i] > -kappa) return false;
    }
    // Pairwise disjointness in exact dyadic arithmetic. Mirror disks of a
    // conjugate pair being disjoint proves delta > radius (strictly complex
    // roots); a real-centered disk is self-conjugate, so its unique root is.
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            Dyadic rsum = dyadic_pow2(e[i]) + dyadic_pow2(e[j]);
            DyadicComplex diff = centers[i] - centers[j];
            if (!(diff.norm2() > rsum * rsum)) return false;
        }
    }
    disks.clear();
    for (std::size_t i = 0; i < centers.size(); ++i) disks.push_back({centers[i], dyadic_pow2(e[i])});
    // Guaranteed bits = the weakest disk.
    achieved = LONG_MAX;
    for (long ei : e) achieved = std::min(achieved, -ei);
    return true;
}

long env_precision_cap() {
    if (const char* s = std::getenv("UPOS_MAX_PRECISION")) {
        long v = std::atol(s);
        if (v > 0) return v;
    }
    return 1L << 22; // ~4M bits; effectively "no cap" for sane inputs
}

bool exact_sqrt_rat(const Rat& q, Rat& out) {
    if (q < 0) return false;
    Int num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rat r;
    r.get_num() = sn;
    r.get_den() = sd;
    r.canonicalize();
    out = r;
    return true;
}

} // namespace

ConjugatePairSet refine_all_roots(const RatPoly& a, long kappa) {
    if (a.is_zero()) throw domain_error("root refinement of the zero polynomial");
    if (a.degree() == 0) {
        ConjugatePairSet empty;
        empty.kappa = kappa;
        return empty;
    }
    if (a.lc() <= 0) throw domain_error("root refinement requires a positive leading coefficient");
    if (!is_square_free(a)) throw not_square_free_error("input has multiple roots");
    if (kappa < 1) kappa = 1;

    const RatPoly da = a.derivative();
    RatPoly work = a;
    bool zero_root = false;
    if (work.coeff(0) == 0) {
        zero_root = true;
        work = exact_div(work, RatPoly({Rat(0), Rat(1)}));
    }

    // Exact candidate generators for low degrees; rounding precision p
    // escalates if disjointness needs finer centers.
    auto try_exact = [&](long p, Classified& cand) -> bool {
        cand.reals.clear();
        cand.pairs.clear();
        if (zero_root) cand.reals.push_back(Dyadic());
        const long dw = work.degree();
        if (dw == 0) return true;
        if (dw == 1) {
            cand.reals.push_back(round_to_dyadic(-work.coeff(0) / work.coeff(1), p));
            std::sort(cand.reals.begin(), cand.reals.end());
            return true;
        }
        if (dw == 2) {
            const Rat &c2 = work.coeff(2), &c1 = work.coeff(1), &c0 = work.coeff(0);
            Rat disc = c1 * c1 - 4 * c2 * c0;
            Rat s;
            if (disc > 0 && exact_sqrt_rat(disc, s)) {
                cand.reals.push_back(round_to_dyadic((-c1 + s) / (2 * c2), p));
                cand.reals.push_back(round_to_dyadic((-c1 - s) / (2 * c2), p));
                std::sort(cand.reals.begin(), cand.reals.end());
                return true;
            }
            if (disc < 0 && exact_sqrt_rat(-disc, s)) {
                Rat delta = s / (2 * c2);
                if (delta < 0) delta = -delta;
                cand.pairs.emplace_back(round_to_dyadic(-c1 / (2 * c2), p),
                                        round_to_dyadic(delta, p));
                return true;
            }
        }
        return false;
    };

    ConjugatePairSet out;
    Classified cand;
    // Exact path first.
    {
        long p = std::max(kappa + 16, 24L);
        for (int attempt = 0; attempt < 24; ++attempt, p *= 2) {
            if (!try_exact(p, cand)) break;
            std::vector<RootDisk> disks;
            long achieved = 0;
            if (certify(a, da, cand, kappa, disks, achieved)) {
                out.pairs = cand.pairs;
                out.real_roots = cand.reals;
                out.kappa = achieved;
                out.disks = std::move(disks);
                return out;
            }
        }
        if (try_exact(kappa + 16, cand) && work.degree() <= 1)
            throw precision_exhausted_error("could not certify exact low-degree roots");
    }

    // General path: Aberth at escalating precision.
    const zp::ZPoly f = zp::from_rat(work);
    const long dw = zp::degree(f);
    const long target_e = -(kappa + lg_of_degree(dw) + 4);
    const long cap_bits = env_precision_cap();
    long w = std::max({2 * (static_cast<long>(work.tau()) + dw), kappa + 48, 64L});
    std::vector<std::pair<Rat, Rat>> warm;
    double angle_offset = 0.0;
    const int max_doublings = 20;
    for (int level = 0; level <= max_doublings; ++level) {
        if (w > cap_bits)
            throw precision_exhausted_error("working precision cap " + std::to_string(cap_bits) +
                                            " bits reached before certification succeeded");
        AberthEngine eng(f, static_cast<mpfr_prec_t>(w));
        if (warm.empty())
            eng.init_circle(angle_offset);
        else
            eng.warm_start(warm);
        const long max_sweeps = 250 + 2 * dw;
        bool settled = false, broke = false;
        for (long it = 0; it < max_sweeps; ++it) {
            long e = eng.sweep();
            if (e == LONG_MAX) { // numeric breakdown: restart cold, jittered
                broke = true;
                warm.clear();
                angle_offset += 0.37;
                break;
            }
            if (e <= target_e) {
                settled = true;
                break;
            }
        }
        if (settled) {
            Classified sym;
            if (symmetrize(eng.rounded(kappa + 16), kappa, sym)) {
                if (zero_root) {
                    sym.reals.push_back(Dyadic());
                    std::sort(sym.reals.begin(), sym.reals.end());
                }
                std::vector<RootDisk> disks;
                long achieved = 0;
                if (certify(a, da, sym, kappa, disks, achieved)) {
                    out.pairs = std::move(sym.pairs);
                    out.real_roots = std::move(sym.reals);
                    out.kappa = achieved;
                    out.disks = std::move(disks);
                    return out;
                }
            }
        }
        if (!broke) warm = eng.snapshot(); // keep partial progress across levels
        w *= 2;
    }
    throw precision_exhausted_error("root certification failed after " +
                                    std::to_string(max_doublings) + " precision doublings");
}

// ---------------------------------------------------------------------------
// Real-root isolation (Descartes-rule bisection, exact integer arithmetic).

namespace {

int sign_variations(const zp::ZPoly& f) {
    int v = 0, prev = 0;
    for (const auto& c : f) {
        int s = sgn(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

zp::ZPoly taylor_shift1(const zp::ZPoly& f) {
    zp::ZPoly r(f);
    const std::size_t n = r.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t j = n - 1; j-- > k;) r[j] += r[j + 1];
    return r;
}

// Descartes bound for the number of roots of f in the open interval (a, b);
// endpoints must not be roots. a, b dyadic rationals with common scale.
int descartes_var(const zp::ZPoly& f, const Rat& a, const Rat& b) {
    const long d = zp::degree(f);
    // Common denominator 2^s for both endpoints.
    Rat width = b - a;
    Int den;
    mpz_lcm(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    Int p = a.get_num() * (den / a.get_den());
    Int q = width.get_num() * (den / width.get_den());
    // T(y) = den^d * f((p + q y)/den) = sum f_k (p + q y)^k den^(d-k).
    zp::ZPoly acc(static_cast<std::size_t>(d) + 1, Int(0));
    zp::ZPoly pk{Int(1)};
    Int den_pow(1);
    std::vector<Int> den_powers(static_cast<std::size_t>(d) + 1);
    for (long k = 0; k <= d; ++k) {
        den_powers[static_cast<std::size_t>(d - k)] = den_pow;
        den_pow *= den;
    }
    for (long k = 0; k <= d; ++k) {
        const Int& fk = f[static_cast<std::size_t>(k)];
        if (fk != 0) {
            const Int& dp = den_powers[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < pk.size(); ++i) acc[i] += fk * dp * pk[i];
        }
        if (k < d) {
            // pk <- pk * (p + q y)
            zp::ZPoly next(pk.size() + 1, Int(0));
            for (std::size_t i = 0; i < pk.size(); ++i) {
                next[i] += pk[i] * p;
                next[i + 1] += pk[i] * q;
            }
            pk = std::move(next);
        }
    }
    zp::trim(acc);
    if (acc.empty() || acc.front() == 0) throw internal_error("endpoint root in Descartes test");
    zp::ZPoly rev(acc.rbegin(), acc.rend());
    zp::ZPoly u = taylor_shift1(rev);
    if (u.empty() || u.front() == 0) throw internal_error("endpoint root in Descartes test");
    return sign_variations(u);
}

} // namespace

RealRootIsolation isolate_real_roots(const RatPoly& a) {
    if (a.is_zero()) throw domain_error("cannot isolate roots of the zero polynomial");
    RealRootIsolation out;
    if (a.degree() < 1) {
        out.sample_points.push_back(Rat(0));
        return out;
    }
    const zp::ZPoly f = zp::from_rat(a);
    Rat r = root_magnitude_bound(a);
    long e = floor_lg(r);
    if (pow2_rat(e) != r) ++e;
    const Rat bound = pow2_rat(e);

    struct Job {
        Rat lo, hi;
    };
    std::vector<Job> stack{{-bound, bound}};
    long guard = 0;
    while (!stack.empty()) {
        if (++guard > 200000) throw internal_error("root isolation did not terminate");
        Job job = std::move(stack.back());
        stack.pop_back();
        int v = descartes_var(f, job.lo, job.hi);
        if (v == 0) continue;
        if (v == 1) {
            out.intervals.emplace_back(job.lo, job.hi);
            continue;
        }
        // Split at a non-root point near the middle.
        Rat mid = (job.lo + job.hi) / 2;
        if (zp::sign_at(f, mid) == 0) {
            Rat w = job.hi - job.lo;
            bool found = false;
            for (long den = 16; !found && den <= (1L << 30); den *= 2) {
                for (long num = den / 2 - 1; num >= 1; num -= 2) {
                    Rat cand = job.lo + w * Rat(num) / Rat(den);
                    if (zp::sign_at(f, cand) != 0) {
                        mid = cand;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw internal_error("no root-free split point found");
        }
        stack.push_back({job.lo, mid});
        stack.push_back({mid, job.hi});
    }
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    if (out.intervals.empty()) {
        out.sample_points.push_back(Rat(0));
        return out;
    }
    out.sample_points.push_back(-bound);
    for (std::size_t i = 0; i + 1 < out.intervals.size(); ++i) {
        const Rat& hi_i = out.intervals[i].second;
        const Rat& lo_n = out.intervals[i + 1].first;
        out.sample_points.push_back(hi_i == lo_n ? hi_i : (hi_i + lo_n) / 2);
    }
    out.sample_points.push_back(bound);
    return out;
}

std::pair<Rat, Rat> refine_isolating_interval(const RatPoly& a, Rat lo, Rat hi, long prec) {
    if (!(lo < hi)) throw domain_error("refinement needs a nonempty interval");
    const Rat width_target = pow2_rat(-prec);
    int slo = sgn(a.eval(lo));
    int shi = sgn(a.eval(hi));
    if (slo == 0 || shi == 0 || slo == shi)
        throw domain_error("refinement needs a sign change across the interval");
    while (hi - lo > width_target) {
        Rat mid = (lo + hi) / 2;
        int sm = sgn(a.eval(mid));
        if (sm == 0) {
            // Landed exactly on the root: return a tight bracket around it.
            Rat w = width_target / 4;
            return {mid - w, mid + w};
        }
        if (sm == slo)
            lo = std::move(mid);
        else
            hi = std::move(mid);
    }
    return {lo, hi};
}

} // namespace upos
