#include "upos/karlin.hpp"

#include <algorithm>
#include <optional>

#include "upos/errors.hpp"
#include "upos/fanin.hpp"
#include "upos/interval.hpp"
#include "upos/roots.hpp"
#include "upos/squarefree.hpp"
#include "upos/sturm.hpp"
#include "upos/usos.hpp"

namespace upos {

Dyadic dyadic_sqrt(const Rat& q, long t) {
    if (q < 0) throw domain_error("square root of a negative rational");
    if (t < 0) throw domain_error("negative square-root precision");
    long tt = t + 1;
    // floor(sqrt(floor(q * 4^tt))) / 2^tt lies within 2^-t of sqrt(q).
    Int scaled = (q.get_num() << (2 * tt)) / q.get_den();
    Int root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return Dyadic(root, tt);
}

std::pair<RatPoly, RatPoly> interlace_step(const RatPoly& p, const RatPoly& q,
                                           const Dyadic& gamma, const Dyadic& delta) {
    if (!(delta.sign() > 0))
        throw domain_error("invalid root: delta must be positive for the interlacing step");
    Rat g = gamma.to_rational(), dl = delta.to_rational();
    RatPoly p_next = p.shifted_up(1) - p.scaled(g) - q.scaled(dl);
    RatPoly q_next = p.scaled(dl) + q.shifted_up(1) - q.scaled(g);
    return {std::move(p_next), std::move(q_next)};
}

long karlin_default_precision(const RatPoly& a) {
    if (a.is_zero() || a.degree() <= 0) return 64;
    long d = a.degree();
    return std::max<long>(64, 2 * (d * a.tau() + 4 * d));
}

namespace {

// sqrt(gamma + i delta) with positive imaginary part, to roughly t bits.
// Branches on the sign of gamma for numerical stability of the smaller part.
std::pair<Dyadic, Dyadic> approx_sqrt_upper(const Dyadic& gamma, const Dyadic& delta, long t) {
    Rat g = gamma.to_rational(), dl = delta.to_rational();
    Rat norm2 = g * g + dl * dl;
    Rat r = dyadic_sqrt(norm2, 2 * t + 8).to_rational();
    if (gamma.sign() >= 0) {
        Dyadic w = dyadic_sqrt((r + g) / 2, t + 8);
        if (w.is_zero())
            throw precision_insufficient_error("complex square root has underflowed");
        Dyadic h = round_to_dyadic(dl / (2 * w.to_rational()), t + 8);
        return {w, h};
    }
    Dyadic h = dyadic_sqrt((r - g) / 2, t + 8);
    if (h.is_zero())
        throw precision_insufficient_error("complex square root has underflowed");
    Dyadic w = round_to_dyadic(dl / (2 * h.to_rational()), t + 8);
    return {w, h};
}

struct LabeledInterval {
    Rat lo, hi;
    bool is_x = false;
};

// Isolate and refine all real roots of p to width <= 2^-(prec+2); the count
// must come out as expected, else the working precision was not enough to
// give p the structure of its exact counterpart.
std::vector<std::pair<Rat, Rat>> refined_real_roots(const RatPoly& p, long expected, long prec) {
    if (expected == 0 && p.degree() <= 0) return {};
    if (p.is_zero() || !is_square_free(p))
        throw precision_insufficient_error("interlacing pair is not square-free at this precision");
    RealRootIsolation iso = isolate_real_roots(p);
    if (static_cast<long>(iso.intervals.size()) != expected)
        throw precision_insufficient_error("real-root count of the interlacing pair is wrong at this precision");
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(iso.intervals.size());
    for (const auto& iv : iso.intervals)
        out.push_back(refine_isolating_interval(p, iv.first, iv.second, prec + 2));
    return out;
}

// Exact alternation certificate: merged intervals pairwise disjoint, labels
// alternating, starting with an x-interval iff x_first.
void check_alternation(std::vector<LabeledInterval> merged, bool x_first) {
    std::sort(merged.begin(), merged.end(),
              [](const LabeledInterval& l, const LabeledInterval& r) { return l.lo < r.lo; });
    for (size_t i = 0; i < merged.size(); ++i) {
        if (i + 1 < merged.size() && !(merged[i].hi < merged[i + 1].lo))
            throw precision_insufficient_error("isolating intervals of the interlacing pair overlap");
        bool want_x = x_first ? (i % 2 == 0) : (i % 2 == 1);
        if (merged[i].is_x != want_x)
            throw precision_insufficient_error("roots of the interlacing pair do not alternate");
    }
}

std::vector<Dyadic> round_points(const std::vector<std::pair<Rat, Rat>>& intervals, long prec) {
    std::vector<Dyadic> out;
    out.reserve(intervals.size());
    for (const auto& iv : intervals)
        out.push_back(round_to_dyadic((iv.first + iv.second) / 2, prec));
    return out;
}

std::vector<LabeledInterval> label_merge(const std::vector<std::pair<Rat, Rat>>& xs,
                                         const std::vector<std::pair<Rat, Rat>>& ys) {
    std::vector<LabeledInterval> merged;
    merged.reserve(xs.size() + ys.size());
    for (const auto& iv : xs) merged.push_back({iv.first, iv.second, true});
    for (const auto& iv : ys) merged.push_back({iv.first, iv.second, false});
    return merged;
}

RatPoly monic_from_points(const std::vector<Dyadic>& points) {
    std::vector<DyadicComplex> roots;
    roots.reserve(points.size());
    for (const Dyadic& p : points) roots.push_back({p, Dyadic()});
    return product_tree(roots, Rat(1));
}

void assert_residual(const RatPoly& a, const KarlinDecomposition& dec) {
    Rat residual = (a - karlin_reconstruction(dec)).inf_norm();
    if (!(residual <= pow2_rat(-(dec.precision / 2))))
        throw precision_insufficient_error("Karlin reconstruction residual exceeds 2^(-prec/2)");
}

// Even-index coefficients as a polynomial in u (s with s(y) = out(y^2)).
RatPoly even_extract(const RatPoly& s) {
    std::vector<Rat> c;
    for (long k = 0; k <= s.degree(); k += 2) c.push_back(s.coeff(static_cast<size_t>(k)));
    return RatPoly(std::move(c));
}

RatPoly odd_extract(const RatPoly& s) {
    std::vector<Rat> c;
    for (long k = 1; k <= s.degree(); k += 2) c.push_back(s.coeff(static_cast<size_t>(k)));
    return RatPoly(std::move(c));
}

void require_parity_pure(const RatPoly& s, bool even) {
    for (long k = even ? 1 : 0; k <= s.degree(); k += 2)
        if (!(s.coeff(static_cast<size_t>(k)) == 0))
            throw internal_error("interlacing pair lost its parity structure");
}

KarlinDecomposition constant_decomposition(KarlinDomain domain, const Rat& value, long prec) {
    KarlinDecomposition dec;
    dec.domain = domain;
    dec.P = RatPoly::constant(Rat(1));
    dec.alpha = value;
    dec.beta = Rat(0);
    dec.precision = prec;
    return dec;
}

} // namespace

RatPoly karlin_reconstruction(const KarlinDecomposition& dec) {
    RatPoly px = monic_from_points(dec.karlin_x);
    RatPoly py = monic_from_points(dec.karlin_y);
    RatPoly gx = (px * px).scaled(dec.alpha);
    RatPoly gy = (py * py).scaled(dec.beta);
    switch (dec.domain) {
        case KarlinDomain::real_line:
            return gx + gy;
        case KarlinDomain::halfline:
            return gx + gy.shifted_up(1);
        case KarlinDomain::segment: {
            RatPoly xa = RatPoly::x() - RatPoly::constant(dec.a);
            RatPoly bx = RatPoly::constant(dec.b) - RatPoly::x();
            // parity_swapped records that the decomposed degree was odd; the
            // point counts alone cannot tell a constant from degree one.
            if (dec.parity_swapped)
                return (gx * xa) + (gy * bx); // odd degree
            return gx + (gy * (xa * bx));     // even degree
        }
    }
    throw internal_error("unreachable Karlin domain");
}

KarlinDecomposition decompose_R(const RatPoly& a, long prec) {
    if (prec < 8) throw domain_error("Karlin precision must be at least 8 bits");
    if (a.is_zero()) throw not_positive_error("the zero polynomial is not strictly positive");
    long d = a.degree();
    if (d == 0) {
        if (!(a.coeff(0) > 0)) throw not_positive_error("nonpositive constant");
        return constant_decomposition(KarlinDomain::real_line, a.coeff(0), prec);
    }
    if (d % 2 != 0) throw domain_error("real-line decomposition requires even degree");
    if (!is_square_free(a)) throw not_square_free_error("input has a repeated factor");
    if (a.lc() < 0 || sturm_count_real_roots(a) != 0)
        throw not_positive_error("polynomial is not strictly positive over R");

    ConjugatePairSet roots = refine_all_roots(a, prec);
    if (!roots.real_roots.empty())
        throw internal_error("real root surfaced after the positivity check");
    PQPair pq = split_pq(roots.pairs, a.lc());
    long m = d / 2;
    if (pq.P.degree() != m || pq.Q.degree() != m - 1)
        throw internal_error("interlacing pair has unexpected degrees");

    KarlinDecomposition dec;
    dec.domain = KarlinDomain::real_line;
    dec.P = pq.P;
    dec.Q = pq.Q;
    dec.alpha = a.lc();                          // P is monic
    dec.beta = a.lc() * pq.Q.lc() * pq.Q.lc();
    dec.precision = prec;

    auto xs = refined_real_roots(pq.P, m, prec);
    auto ys = refined_real_roots(pq.Q, m - 1, prec);
    check_alternation(label_merge(xs, ys), /*x_first=*/true);
    dec.karlin_x = round_points(xs, prec);
    dec.karlin_y = round_points(ys, prec);
    assert_residual(a, dec);
    return dec;
}

KarlinDecomposition decompose_halfline(const RatPoly& a, long prec) {
    if (prec < 8) throw domain_error("Karlin precision must be at least 8 bits");
    if (a.is_zero()) throw domain_error("zero polynomial has no half-line decomposition");
    long d = a.degree();
    if (d == 0) {
        if (a.coeff(0) < 0) throw not_positive_on_domain_error("half-line", Rat(0), a.coeff(0));
        return constant_decomposition(KarlinDomain::halfline, a.coeff(0), prec);
    }
    if (a.coeff(0) == 0)
        throw domain_error("A(0) = 0: strict positivity on the half-line needs a nonzero constant term");
    if (!is_square_free(a)) throw not_square_free_error("input has a repeated factor");
    if (a.coeff(0) < 0) throw not_positive_on_domain_error("half-line", Rat(0), a.coeff(0));
    if (sturm_count_real_roots(a, Rat(0), std::nullopt) != 0) {
        // A crosses zero on (0, inf); surface an exact point where it is negative.
        std::optional<Rat> y0 = find_witness(transform_halfline(a));
        if (!y0) throw internal_error("sign change on the half-line without a witness");
        Rat t = *y0 * *y0;
        Rat v = a.eval(t);
        if (!(v < 0)) throw internal_error("half-line witness fails to evaluate negative");
        throw not_positive_on_domain_error("half-line", t, v);
    }

    // Root magnitudes are bounded below via the reversed polynomial, so the
    // square-root map y = sqrt(rho) loses at most half those bits.
    long mag_pad = std::max<long>(0, floor_lg(root_magnitude_bound(a.reversed())) / 2) + 24;
    ConjugatePairSet ar = refine_all_roots(a, prec + mag_pad);
    long t_bits = prec + 16;

    // Map each root of A to the upper-half-plane square roots of A(y^2)'s
    // root set. Using the same dyadics with negated real parts keeps the
    // y-root multiset exactly symmetric, which is what makes the split
    // exactly parity-pure below.
    std::vector<std::pair<Dyadic, Dyadic>> upper;
    upper.reserve(static_cast<size_t>(d));
    long negative_real = 0;
    for (const Dyadic& rr : ar.real_roots) {
        if (!(rr.sign() < 0))
            throw internal_error("nonnegative real root after the positivity check");
        upper.emplace_back(Dyadic(), dyadic_sqrt(-rr.to_rational(), t_bits));
        ++negative_real;
    }
    for (const auto& pr : ar.pairs) {
        auto [w, h] = approx_sqrt_upper(pr.first, pr.second, t_bits);
        upper.emplace_back(w, h);
        upper.emplace_back(-w, h);
    }
    PQPair pq = split_pq(upper, a.lc());

    // negative_real has the parity of d, so P + iQ is a product of
    // (odd + i even) factors in odd count exactly when d is odd.
    bool swapped = (d % 2 != 0);
    if (negative_real % 2 != d % 2)
        throw internal_error("negative-real root count has the wrong parity");
    const RatPoly& even_src = swapped ? pq.Q : pq.P;
    const RatPoly& odd_src = swapped ? pq.P : pq.Q;
    require_parity_pure(even_src, /*even=*/true);
    require_parity_pure(odd_src, /*even=*/false);
    RatPoly big_p = even_extract(even_src);
    RatPoly big_q = odd_extract(odd_src);
    if (big_p.lc() < 0) big_p = big_p.scaled(Rat(-1));
    if (big_q.lc() < 0) big_q = big_q.scaled(Rat(-1));
    long expect_p = (d % 2 == 0) ? d / 2 : (d - 1) / 2;
    long expect_q = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
    if (big_p.degree() != expect_p || big_q.degree() != expect_q)
        throw internal_error("half-line pair has unexpected degrees");

    KarlinDecomposition dec;
    dec.domain = KarlinDomain::halfline;
    dec.P = big_p;
    dec.Q = big_q;
    dec.alpha = a.lc() * big_p.lc() * big_p.lc();
    dec.beta = a.lc() * big_q.lc() * big_q.lc();
    dec.precision = prec;
    dec.parity_swapped = swapped;

    auto xs = refined_real_roots(big_p, expect_p, prec);
    auto ys = refined_real_roots(big_q, expect_q, prec);
    for (const auto& iv : xs)
        if (!(iv.first > 0))
            throw precision_insufficient_error("half-line Karlin point not separated from 0");
    for (const auto& iv : ys)
        if (!(iv.first > 0))
            throw precision_insufficient_error("half-line Karlin point not separated from 0");
    check_alternation(label_merge(xs, ys), /*x_first=*/true);
    dec.karlin_x = round_points(xs, prec);
    dec.karlin_y = round_points(ys, prec);
    assert_residual(a, dec);
    return dec;
}

KarlinDecomposition decompose_interval(const RatPoly& a_poly, const Rat& a, const Rat& b, long prec) {
    if (!(a < b)) throw domain_error("empty segment: need a < b");
    if (a_poly.is_zero()) throw domain_error("zero polynomial has no segment decomposition");
    long d = a_poly.degree();
    if (d == 0) {
        if (a_poly.coeff(0) < 0) throw not_positive_on_domain_error("segment", a, a_poly.coeff(0));
        KarlinDecomposition dec = constant_decomposition(KarlinDomain::segment, a_poly.coeff(0), prec);
        dec.a = a;
        dec.b = b;
        return dec;
    }
    if (!is_square_free(a_poly)) throw not_square_free_error("input has a repeated factor");
    Rat va = a_poly.eval(a), vb = a_poly.eval(b);
    if (va < 0) throw not_positive_on_domain_error("segment", a, va);
    if (vb < 0) throw not_positive_on_domain_error("segment", b, vb);
    if (va == 0 || vb == 0)
        throw domain_error("polynomial vanishes at a segment endpoint; strict positivity is required");

    // [a, b] -> [-1, 1] affinely, then Goursat onto the half-line.
    Rat scale = (b - a) / 2, center = (b + a) / 2;
    RatPoly affine = a_poly.taylor_shift(center).scale_arg(scale);
    RatPoly half_input = goursat(affine, d);

    KarlinDecomposition half;
    try {
        half = decompose_halfline(half_input, prec);
    } catch (const not_positive_on_domain_error& e) {
        Rat x0 = (Rat(1) - e.t) / (Rat(1) + e.t);
        Rat t = scale * x0 + center;
        Rat v = a_poly.eval(t);
        if (!(v < 0)) throw internal_error("mapped segment witness fails to evaluate negative");
        throw not_positive_on_domain_error("segment", t, v);
    }

    // u in (0, inf) maps back through x0 = (1-u)/(1+u), decreasing, so the
    // point lists reverse their order inside (a, b).
    auto map_points = [&](const std::vector<Dyadic>& us) {
        std::vector<Dyadic> out;
        out.reserve(us.size());
        for (auto it = us.rbegin(); it != us.rend(); ++it) {
            Rat u = it->to_rational();
            if (!(u > 0)) throw precision_insufficient_error("half-line point not separated from 0");
            Rat t = scale * ((Rat(1) - u) / (Rat(1) + u)) + center;
            Dyadic td = round_to_dyadic(t, prec + 4);
            Rat tr = td.to_rational();
            if (!(a < tr && tr < b))
                throw precision_insufficient_error("mapped Karlin point left the segment");
            out.push_back(td);
        }
        return out;
    };

    KarlinDecomposition dec;
    dec.domain = KarlinDomain::segment;
    dec.a = a;
    dec.b = b;
    dec.P = half.P;
    dec.Q = half.Q;
    dec.precision = prec;
    dec.parity_swapped = half.parity_swapped;
    dec.karlin_x = map_points(half.karlin_x);
    dec.karlin_y = map_points(half.karlin_y);

    // Strict alternation in segment order. Even degree: x ... x; odd degree:
    // equal counts with a y-point first (the reversal swaps the leader).
    {
        std::vector<LabeledInterval> merged;
        for (const Dyadic& p : dec.karlin_x) merged.push_back({p.to_rational(), p.to_rational(), true});
        for (const Dyadic& p : dec.karlin_y) merged.push_back({p.to_rational(), p.to_rational(), false});
        std::sort(merged.begin(), merged.end(),
                  [](const LabeledInterval& l, const LabeledInterval& r) { return l.lo < r.lo; });
        bool x_first = dec.karlin_x.size() != dec.karlin_y.size();
        for (size_t i = 0; i < merged.size(); ++i) {
            if (i + 1 < merged.size() && !(merged[i].lo < merged[i + 1].lo))
                throw precision_insufficient_error("mapped Karlin points collide");
            bool want_x = x_first ? (i % 2 == 0) : (i % 2 == 1);
            if (merged[i].is_x != want_x)
                throw precision_insufficient_error("mapped Karlin points do not alternate");
        }
    }

    // Weights from endpoint evaluations (the boundary multipliers vanish at
    // one endpoint each) and leading-coefficient matching.
    RatPoly u_poly = monic_from_points(dec.karlin_x);
    RatPoly v_poly = monic_from_points(dec.karlin_y);
    if (d % 2 == 0) {
        Rat ua = u_poly.eval(a);
        dec.alpha = va / (ua * ua);
        dec.beta = dec.alpha - a_poly.lc();
    } else {
        Rat ub = u_poly.eval(b), vva = v_poly.eval(a);
        dec.alpha = vb / ((b - a) * ub * ub);
        dec.beta = va / ((b - a) * vva * vva);
    }
    if (!(dec.alpha > 0) || !(dec.beta > 0))
        throw precision_insufficient_error("segment Karlin weights failed to come out positive");
    assert_residual(a_poly, dec);
    return dec;
}

} // namespace upos
