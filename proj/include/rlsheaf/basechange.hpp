#pragma once

// Pullback of (RL-)étalés along continuous maps, RLE-spaces with inverse
// morphisms, and the contravariant section functor.

#include "rlsheaf/bundle.hpp"

namespace rlsheaf {

struct PullbackEtale {
    SpaceMap along;    // f: B → C
    Bundle source;     // over C
    Bundle result;     // f*source over B, points "(b|s)"
    SpaceMap fprime;   // f*source → source.total
};

/// The canonical pullback {(b|s) | f(b) = φ(s)} as a bundle over dom(f).
inline PullbackEtale pullback_etale(const SpaceMap& f, const Bundle& e) {
    if (!same_space(f.cod, e.base)) throw PreconditionError("pullback_etale: map does not land in the base");
    auto pb = pullback_space(f, e.proj);
    PullbackEtale out{f, e, Bundle::create(pb.proj1), pb.proj2};
    if (is_etale(e) && !is_etale(out.result))
        throw InvariantViolation("pullback_etale: pullback of an étalé is not étalé");
    return out;
}

/// Index in f*e of the pair (b|s).
inline std::size_t pair_index(const PullbackEtale& pb, std::size_t b, std::size_t s) {
    return pb.result.total->require(pair_id(pb.result.base->id(b), pb.source.total->id(s)));
}

/// f*h: (b|s) ↦ (b|h(s)) for h: e1 → e2 over cod(f).
inline SpaceMap pullback_morphism(const PullbackEtale& p1, const PullbackEtale& p2, const SpaceMap& h) {
    if (!is_bundle_morphism(h, p1.source, p2.source))
        throw PreconditionError("pullback_morphism: not a morphism over the base");
    std::vector<std::size_t> t;
    for (std::size_t k = 0; k < p1.result.total->size(); ++k)
        t.push_back(pair_index(p2, p1.result.over(k), h.table[p1.fprime.table[k]]));
    return {p1.result.total, p2.result.total, std::move(t)};
}

/// f*(re) with (b|s) ⋄ (b|t) = (b|s ⋄ t) and 0 = (b|0_{f(b)}).
inline RLBundle pullback_rl_etale(const PullbackEtale& pb, const RLBundle& re) {
    const auto n = pb.result.total->size();
    StalkOps ops;
    ops.n = n;
    for (auto& t : ops.table) t.assign(n * n, npos);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (pb.result.over(i) != pb.result.over(j)) continue;
            for (int o = 0; o < 4; ++o) {
                auto v = re.ops.table[o][pb.fprime.table[i] * re.ops.n + pb.fprime.table[j]];
                ops.table[o][i * n + j] = pair_index(pb, pb.result.over(i), v);
            }
        }
    for (std::size_t b = 0; b < pb.result.base->size(); ++b) {
        ops.zero.push_back(pair_index(pb, b, re.ops.zero[pb.along.table[b]]));
        ops.one.push_back(pair_index(pb, b, re.ops.one[pb.along.table[b]]));
    }
    return make_rl_bundle(pb.result, std::move(ops));
}

/// λ: (gf)*e → f*(g*e), (b|t) ↦ (b|(f(b)|t)).
inline SpaceMap lambda_iso(const PullbackEtale& gf, const PullbackEtale& f_of_g) {
    const auto& f = f_of_g.along;
    std::vector<std::size_t> t;
    for (std::size_t k = 0; k < gf.result.total->size(); ++k) {
        auto b = gf.result.over(k);
        auto inner = f_of_g.source.total->require(pair_id(f.cod->id(f.table[b]), gf.source.total->id(gf.fprime.table[k])));
        t.push_back(pair_index(f_of_g, b, inner));
    }
    SpaceMap m(gf.result.total, f_of_g.result.total, std::move(t));
    if (!is_homeomorphism(m) || !is_bundle_morphism(m, gf.result, f_of_g.result))
        throw InvariantViolation("lambda_iso: not an isomorphism over the base");
    return m;
}

// --- RLE-spaces ------------------------------------------------------------------

struct RLESpace {
    RLBundle etale;

    const SpaceRef& base() const { return etale.bundle.base; }

    static RLESpace create(RLBundle rb) {
        if (!is_etale(rb.bundle)) throw PreconditionError("RLE-space: bundle is not étalé");
        return {std::move(rb)};
    }
};

/// (f, α): (B, T_B) → (C, T_C) with α: f*T_C → T_B over B.
struct RLEInvMorphism {
    SpaceMap f;
    SpaceMap alpha;
    PullbackEtale pulled;  // f*T_C

    static RLEInvMorphism create(const RLESpace& src, const RLESpace& dst, SpaceMap f, SpaceMap alpha) {
        if (!same_space(f.dom, src.base()) || !same_space(f.cod, dst.base()))
            throw PreconditionError("RLE morphism: base map has the wrong ends");
        if (!is_continuous(f)) throw PreconditionError("RLE morphism: base map is not continuous");
        auto pb = pullback_etale(f, dst.etale.bundle);
        auto rl = pullback_rl_etale(pb, dst.etale);
        if (!same_space(alpha.dom, pb.result.total) || !same_space(alpha.cod, src.etale.total()))
            throw PreconditionError("RLE morphism: α must map f*T_C to T_B");
        check_rl_bundle_morphism(alpha, rl, src.etale).throw_if_failed("RLE morphism: α");
        return {std::move(f), std::move(alpha), std::move(pb)};
    }
};

/// (1, second projection).
inline RLEInvMorphism rle_identity(const RLESpace& x) {
    auto id = identity_map(x.base());
    auto pb = pullback_etale(id, x.etale.bundle);
    return RLEInvMorphism::create(x, x, id, pb.fprime);
}

/// (g∘f, α ∘ f*β ∘ λ), evaluated as (b|t) ↦ α(b|β(f(b)|t)).
inline RLEInvMorphism compose_rle_inv(const RLESpace& b, const RLESpace& d, const RLEInvMorphism& m1,
                                      const RLEInvMorphism& m2) {
    if (!same_space(m1.f.cod, m2.f.dom)) throw PreconditionError("compose_rle_inv: bases do not chain");
    auto gf = compose(m2.f, m1.f);
    auto pb = pullback_etale(gf, d.etale.bundle);
    std::vector<std::size_t> t;
    for (std::size_t k = 0; k < pb.result.total->size(); ++k) {
        auto bp = pb.result.over(k);
        auto inner = pair_index(m2.pulled, m1.f.table[bp], pb.fprime.table[k]);
        auto via_beta = m2.alpha.table[inner];
        t.push_back(m1.alpha.table[pair_index(m1.pulled, bp, via_beta)]);
    }
    return RLEInvMorphism::create(b, d, gf, SpaceMap(pb.result.total, b.etale.total(), std::move(t)));
}

inline bool operator==(const RLEInvMorphism& a, const RLEInvMorphism& b) { return a.f == b.f && a.alpha == b.alpha; }

// --- the section functor ------------------------------------------------------------

inline SectionAlgebra section_functor_object(const RLESpace& x) {
    return pointwise_rl_on_sections(x.etale, x.base()->whole());
}

/// 𝒮(f,α): Γ(C) → Γ(B), σ ↦ (b ↦ α(b|σ(f(b)))).
inline RLMorphism section_functor_morphism(const RLEInvMorphism& m, const SectionAlgebra& gamma_c,
                                           const SectionAlgebra& gamma_b) {
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < gamma_b.sections.size(); ++i) index.emplace(gamma_b.sections[i].values, i);
    std::vector<Elem> table;
    for (const auto& sigma : gamma_c.sections) {
        std::vector<std::size_t> vals(m.f.dom->size());
        for (std::size_t b = 0; b < vals.size(); ++b)
            vals[b] = m.alpha.table[pair_index(m.pulled, b, sigma.values[m.f.table[b]])];
        auto it = index.find(vals);
        if (it == index.end()) throw InvariantViolation("section functor: image is not a global section");
        table.push_back(it->second);
    }
    return make_rl_morphism(gamma_c.algebra, gamma_b.algebra, std::move(table));
}

}  // namespace rlsheaf
