#include "upos/usos.hpp"

#include <algorithm>
#include <tuple>

#include "upos/errors.hpp"
#include "upos/fanin.hpp"
#include "upos/squarefree.hpp"
#include "upos/sturm.hpp"

namespace upos {

RatPoly build_M(long m) {
    if (m < 0) throw domain_error("build_M needs m >= 0");
    std::vector<Rat> c(static_cast<std::size_t>(2 * m) + 1);
    for (long j = 0; j <= m; ++j) c[static_cast<std::size_t>(2 * j)] = 1;
    return RatPoly(std::move(c));
}

long epsilon_cap_exponent(long d, long tau) { return 5 * d * tau + 9 * d * lg_of_degree(d) + 12; }

long kappa_cap_exponent(long d, long tau) { return 5 * d * tau + 40 * d * lg_of_degree(d); }

namespace {

struct ChainFacts {
    long real_roots;
    bool square_free;
};

ChainFacts chain_facts(const RatPoly& a) {
    SturmChain c = SturmChain::build(a);
    return {static_cast<long>(c.variations_at_neg_inf()) - c.variations_at_pos_inf(),
            zp::degree(c.seq.back()) <= 0};
}

Rat power_of_two_at_least(const Rat& r) {
    long e = floor_lg(r);
    if (pow2_rat(e) != r) ++e;
    return pow2_rat(e);
}

// Sample points where a cheap necessary condition for admissibility is
// checked: eps*M(t) < A(t). Any b failing at a sample would fail the full
// positivity check, so the adaptive search may start past it.
std::vector<Rat> epsilon_sample_points(const RatPoly& a) {
    std::vector<Rat> pts{Rat(0)};
    if (a.degree() < 1) return pts;
    Rat r = root_magnitude_bound(a);
    Int rc;
    mpz_cdiv_q(rc.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    long top = rc.fits_slong_p() ? std::min<long>(64, rc.get_si()) : 64;
    for (long t = 1; t <= top; ++t) {
        pts.emplace_back(t);
        pts.emplace_back(-t);
    }
    for (Rat p(2); p < r; p *= 2) {
        pts.push_back(p);
        pts.push_back(-p);
    }
    return pts;
}

long jump_ahead_exponent(const RatPoly& a, const RatPoly& M) {
    long b = 3;
    for (const Rat& t : epsilon_sample_points(a)) {
        Rat at = a.eval(t);
        if (at <= 0) return -1; // not positive at all; caller raises
        b = std::max(b, floor_lg(M.eval(t) / at) + 1);
    }
    return b;
}

// Adaptive search from a given starting exponent. Returns (eps, b, A_eps
// square-free?); positivity of A_eps is verified exactly for the returned b.
std::tuple<Rat, long, bool> choose_epsilon_from(const RatPoly& a, const RatPoly& M, long b_start,
                                                long b_cap) {
    for (long b = b_start;; ++b) {
        if (b > b_cap)
            throw internal_error("no admissible perturbation up to the worst-case exponent 2^-" +
                                 std::to_string(b_cap));
        Rat eps = pow2_rat(-b);
        RatPoly a_eps = a - M.scaled(eps);
        if (a_eps.lc() <= 0) continue;
        ChainFacts facts = chain_facts(a_eps);
        if (facts.real_roots == 0) return {std::move(eps), b, facts.square_free};
    }
}

RatPoly round_poly_fractional(const RatPoly& p, long prec) {
    std::vector<Rat> c(static_cast<std::size_t>(p.degree() + 1));
    for (long k = 0; k <= p.degree(); ++k)
        c[static_cast<std::size_t>(k)] =
            round_to_dyadic(p.coeff(static_cast<std::size_t>(k)), prec).to_rational();
    return RatPoly(std::move(c));
}

RatPoly odd_summand(const OddTerm& t) {
    std::vector<Rat> c(static_cast<std::size_t>(t.k) + 2);
    c[static_cast<std::size_t>(t.k)] = Rat(t.sign) / 2;
    c[static_cast<std::size_t>(t.k) + 1] = 1;
    return RatPoly(std::move(c));
}

} // namespace

std::pair<Rat, long> choose_epsilon(const RatPoly& a) {
    if (a.is_zero() || a.degree() % 2 != 0) throw domain_error("choose_epsilon needs even degree");
    if (a.lc() < Rat(1, 2) || a.lc() > 1)
        throw domain_error("choose_epsilon needs lc in [1/2, 1]; apply scale_to_unit_lc first");
    const RatPoly M = build_M(a.degree() / 2);
    long b_start = jump_ahead_exponent(a, M);
    if (b_start < 0) throw not_positive_error("polynomial is not positive over R");
    if (a.degree() > 0) {
        ChainFacts facts = chain_facts(a);
        if (facts.real_roots != 0) throw not_positive_error("polynomial is not positive over R");
    }
    auto [eps, b, sqfree] = choose_epsilon_from(a, M, b_start,
                                                epsilon_cap_exponent(a.degree(), static_cast<long>(a.tau())));
    (void)sqfree;
    return {eps, b};
}

KappaResult choose_kappa_and_roots(const RatPoly& a_eps, const Rat& epsilon) {
    if (a_eps.is_zero() || a_eps.degree() % 2 != 0 || a_eps.lc() <= 0)
        throw domain_error("residual setup needs a positive even-degree polynomial");
    const long d = a_eps.degree();
    const long m = d / 2;
    long b_exp = -floor_lg(epsilon);
    if (pow2_rat(-b_exp) != epsilon) throw domain_error("epsilon must be a power of two");
    const long cap = kappa_cap_exponent(d, static_cast<long>(a_eps.tau()));
    long kappa = std::min(b_exp + 64, cap);
    const Rat lc = a_eps.lc();
    for (;;) {
        ConjugatePairSet roots = refine_all_roots(a_eps, kappa);
        if (!roots.real_roots.empty())
            throw internal_error("positive polynomial certified with a real root");
        PQPair pq = split_pq(roots.pairs, lc);
        // The refinement loop works at higher internal precision than the
        // certificate needs; storing all of it would only bloat the output.
        // Round P and Q to ~kappa fractional bits and take the residual of
        // the rounded pair, so the certified identity stays exact.
        pq.P = round_poly_fractional(pq.P, kappa + 8);
        pq.Q = round_poly_fractional(pq.Q, kappa + 8);
        RatPoly recon = (pq.P * pq.P + pq.Q * pq.Q).scaled(lc);
        RatPoly B = a_eps - recon;
        bool ok = true;
        for (long k = 0; k <= m && ok; ++k) {
            Rat lhs = abs(B.coeff(static_cast<std::size_t>(2 * k + 1))) / 4 -
                      B.coeff(static_cast<std::size_t>(2 * k));
            if (k > 0) lhs += abs(B.coeff(static_cast<std::size_t>(2 * k - 1)));
            if (lhs > epsilon) ok = false;
        }
        if (ok) {
            KappaResult out;
            out.roots = std::move(roots);
            out.P = std::move(pq.P);
            out.Q = std::move(pq.Q);
            out.B = std::move(B);
            out.kappa = kappa;
            out.capped = kappa >= cap;
            return out;
        }
        if (kappa >= cap)
            throw internal_error("residual weight inequality still fails at the worst-case "
                                 "root precision 2^-" +
                                 std::to_string(cap));
        kappa = std::min(2 * kappa, cap);
    }
}

std::pair<std::vector<OddTerm>, std::vector<EvenTerm>> assemble_tail(const RatPoly& B,
                                                                     const Rat& epsilon, long m) {
    if (B.degree() >= 2 * m && !B.is_zero())
        throw domain_error("residual degree must stay below the perturbed polynomial's");
    std::vector<OddTerm> odd;
    odd.reserve(static_cast<std::size_t>(m));
    for (long k = 0; k < m; ++k) {
        Rat b = B.coeff(static_cast<std::size_t>(2 * k + 1));
        odd.push_back({abs(b), b < 0 ? -1 : 1, k});
    }
    std::vector<EvenTerm> even;
    even.reserve(static_cast<std::size_t>(m) + 1);
    for (long k = 0; k <= m; ++k) {
        Rat w = epsilon + B.coeff(static_cast<std::size_t>(2 * k)) -
                abs(B.coeff(static_cast<std::size_t>(2 * k + 1))) / 4;
        if (k > 0) w -= abs(B.coeff(static_cast<std::size_t>(2 * k - 1)));
        if (w < 0)
            throw internal_error("negative tail weight: the weight inequality was not enforced");
        even.push_back({std::move(w), k});
    }
    return {std::move(odd), std::move(even)};
}

WsosBlock certify_factor(const RatPoly& g) {
    if (g.is_zero() || g.degree() < 2 || g.degree() % 2 != 0)
        throw domain_error("factor certification needs even degree >= 2");
    if (g.lc() <= 0) throw domain_error("factor certification needs positive lc");
    auto [gs, scale_exp] = scale_to_unit_lc(g);
    const long d = gs.degree();
    const long m = d / 2;
    const RatPoly M = build_M(m);

    WsosBlock block;
    block.scale_exp = scale_exp;
    block.budget.d = d;
    block.budget.tau = static_cast<long>(gs.tau());
    block.budget.b_cap = epsilon_cap_exponent(d, block.budget.tau);

    long b_start = jump_ahead_exponent(gs, M);
    if (b_start < 0) throw not_positive_error("factor is not positive over R");
    Rat eps;
    long b = 0;
    RatPoly a_eps;
    for (;;) {
        bool sqfree = false;
        std::tie(eps, b, sqfree) = choose_epsilon_from(gs, M, b_start, block.budget.b_cap);
        a_eps = gs - M.scaled(eps);
        if (sqfree) break;
        // Shrinking eps keeps A_eps positive; only simplicity of its roots
        // needs a retry.
        b_start = b + 1;
    }
    block.epsilon = eps;
    block.budget.b_exp = b;
    block.budget.b_capped = b >= block.budget.b_cap;

    KappaResult kr = choose_kappa_and_roots(a_eps, eps);
    block.budget.kappa = kr.kappa;
    block.budget.kappa_cap = kappa_cap_exponent(d, static_cast<long>(a_eps.tau()));
    block.budget.kappa_capped = kr.capped;
    block.a_eps_d = a_eps.lc();
    block.P = std::move(kr.P);
    block.Q = std::move(kr.Q);

    auto [odd_full, even_full] = assemble_tail(kr.B, eps, m);
    for (auto& t : odd_full)
        if (t.w != 0) block.odd.push_back(std::move(t));
    for (auto& t : even_full)
        if (t.w != 0) block.even.push_back(std::move(t));

    if (summand_count(block) > d + 3) throw internal_error("summand count bound violated");
    if (expand_block(block) != g) throw internal_error("factor certificate self-check failed");
    return block;
}

std::optional<Rat> find_witness(const RatPoly& a) {
    if (a.is_zero()) return std::nullopt;
    if (a.degree() == 0) {
        if (a.coeff(0) < 0) return Rat(0);
        return std::nullopt;
    }
    // Beyond the root bound the leading term dictates the sign.
    const Rat bnd = power_of_two_at_least(root_magnitude_bound(a));
    auto checked = [&](Rat t) -> std::optional<Rat> {
        if (a.eval(t) >= 0) throw internal_error("sign of dominant term misjudged");
        return t;
    };
    if (a.degree() % 2 == 1) return checked(a.lc() > 0 ? -bnd : bnd);
    if (a.lc() < 0) return checked(bnd);
    if (chain_facts(a).real_roots == 0) return std::nullopt; // positive everywhere
    RatPoly sf = square_free_part(a);
    for (const Rat& t : isolate_real_roots(sf).sample_points)
        if (a.eval(t) < 0) return t;
    return std::nullopt; // real roots exist but all have even multiplicity
}

CertifyResult certify_positive_R(const RatPoly& a) {
    const RatPoly one = RatPoly::constant(Rat(1));
    if (a.is_zero()) return WsosCertificate{Rat(0), one, {}};
    if (a.degree() == 0) {
        if (a.coeff(0) < 0) return NegativityWitness{Rat(0), a.coeff(0)};
        return WsosCertificate{a.coeff(0), one, {}};
    }
    if (a.degree() % 2 == 1 || a.lc() < 0) {
        Rat t = *find_witness(a);
        return NegativityWitness{t, a.eval(t)};
    }

    ChainFacts facts = chain_facts(a);
    bool needs_yun = !facts.square_free;
    if (facts.real_roots > 0) {
        RatPoly sf = square_free_part(a);
        for (const Rat& t : isolate_real_roots(sf).sample_points) {
            Rat v = a.eval(t);
            if (v < 0) return NegativityWitness{t, std::move(v)};
        }
        // Nonnegative with touching roots: they carry even multiplicity, so
        // the square-free split below strips them.
        needs_yun = true;
    }

    WsosCertificate cert;
    if (!needs_yun) {
        cert.lc = 1;
        cert.S = one;
        cert.blocks.push_back(certify_factor(a));
    } else {
        cert.lc = a.lc();
        cert.S = one;
        std::vector<RatPoly> odd_factors;
        for (const auto& [factor, mult] : yun_squarefree_factorization(a)) {
            for (unsigned i = 0; i < mult / 2; ++i) cert.S = cert.S * factor;
            if (mult % 2 == 1) odd_factors.push_back(factor);
        }
        for (const auto& f : odd_factors) {
            if (f.degree() % 2 == 1)
                throw internal_error("odd-degree factor slipped past the witness gate");
            cert.blocks.push_back(certify_factor(f));
        }
    }
    if (expand_certificate(cert) != a) throw internal_error("certificate self-check failed");
    return cert;
}

RatPoly expand_block(const WsosBlock& block) {
    RatPoly acc = (block.P * block.P + block.Q * block.Q).scaled(block.a_eps_d);
    for (const auto& t : block.odd) {
        RatPoly s = odd_summand(t);
        acc = acc + (s * s).scaled(t.w);
    }
    if (!block.even.empty()) {
        long top = 0;
        for (const auto& t : block.even) top = std::max(top, 2 * t.k);
        std::vector<Rat> c(static_cast<std::size_t>(top) + 1);
        for (const auto& t : block.even) c[static_cast<std::size_t>(2 * t.k)] += t.w;
        acc = acc + RatPoly(std::move(c));
    }
    return acc.scaled(pow2_rat(block.scale_exp));
}

RatPoly expand_certificate(const WsosCertificate& cert) {
    RatPoly acc = (cert.S * cert.S).scaled(cert.lc);
    for (const auto& b : cert.blocks) acc = acc * expand_block(b);
    return acc;
}

long summand_count(const WsosBlock& block) {
    long n = 0;
    if (!block.P.is_zero()) ++n;
    if (!block.Q.is_zero()) ++n;
    return n + static_cast<long>(block.odd.size()) + static_cast<long>(block.even.size());
}

std::vector<WeightedSquare> flatten_certificate(const WsosCertificate& cert) {
    std::vector<WeightedSquare> acc{{cert.lc, cert.S}};
    for (const auto& block : cert.blocks) {
        const Rat scale = pow2_rat(block.scale_exp);
        std::vector<WeightedSquare> terms;
        if (!block.P.is_zero()) terms.push_back({scale * block.a_eps_d, block.P});
        if (!block.Q.is_zero()) terms.push_back({scale * block.a_eps_d, block.Q});
        for (const auto& t : block.odd) terms.push_back({scale * t.w, odd_summand(t)});
        for (const auto& t : block.even)
            terms.push_back({scale * t.w, RatPoly::monomial(Rat(1), static_cast<std::size_t>(t.k))});
        std::vector<WeightedSquare> next;
        next.reserve(acc.size() * terms.size());
        for (const auto& u : acc)
            for (const auto& v : terms) next.push_back({u.w * v.w, u.s * v.s});
        acc = std::move(next);
    }
    return acc;
}

} // namespace upos
