#include "upos/fanin.hpp"

#include "upos/dypoly.hpp"
#include "upos/errors.hpp"

namespace upos {

RatPoly product_tree(const std::vector<DyadicComplex>& roots, const Rat& lc,
                     exec::Policy policy) {
    std::vector<DyCVec> leaves;
    leaves.reserve(roots.size());
    const DyadicComplex one(Dyadic(Int(1), 0), Dyadic());
    for (const auto& z : roots) leaves.push_back(DyCVec{DyadicComplex() - z, one});
    DyCVec prod = dyc_product_tree(std::move(leaves), policy);
    auto [re, im] = dyc_to_rat(prod);
    if (!im.is_zero())
        throw imaginary_residue_error("root set is not conjugate-closed: product has degree-" +
                                      std::to_string(im.degree()) + " imaginary part");
    return re.scaled(lc);
}

PQPair split_pq(const std::vector<std::pair<Dyadic, Dyadic>>& upper_pairs, const Rat& lc,
                exec::Policy policy) {
    std::vector<DyCVec> leaves;
    leaves.reserve(upper_pairs.size());
    const DyadicComplex one(Dyadic(Int(1), 0), Dyadic());
    for (const auto& [gamma, delta] : upper_pairs) {
        if (!(delta.sign() > 0)) throw domain_error("split_pq requires strictly positive delta");
        leaves.push_back(DyCVec{DyadicComplex(-gamma, delta), one});
    }
    DyCVec prod = dyc_product_tree(std::move(leaves), policy);
    auto [re, im] = dyc_to_rat(prod);
    PQPair out;
    out.P = std::move(re);
    out.Q = std::move(im);
    out.lc_factor = lc;
    return out;
}

} // namespace upos
