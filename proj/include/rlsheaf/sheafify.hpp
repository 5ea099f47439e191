#pragma once

// The germ space of a bundle, its counit, and the coreflection of étalés in
// bundles, with the residuated-lattice lift.

#include "rlsheaf/bundle.hpp"

namespace rlsheaf {

/// A germ at p is canonically a section over the minimal neighbourhood U_p.
struct Germ {
    std::size_t point = npos;
    Section rep;

    friend bool operator==(const Germ&, const Germ&) = default;
};

/// "(p ⊳ q:t,...)" with the representative's entries in base order.
inline Id germ_id(const Bundle& b, const Germ& g) {
    auto s = section_id(b, g.rep);
    return "(" + b.base->id(g.point) + " ⊳ " + s.substr(1, s.size() - 2) + ")";
}

/// [s]_p for s defined on an open containing p.
inline Germ germ_at(const Bundle& b, const Section& s, std::size_t p) {
    if (p >= b.base->size() || !s.domain.test(p)) throw PreconditionError("germ_at: point outside the domain");
    if (!b.base->is_open(s.domain)) throw PreconditionError("germ_at: section domain is not open");
    return {p, restrict(s, b.base->min_nbhd(p))};
}

/// The neighbourhood-agreement equivalence: some open W ∋ p inside both domains on which
/// the sections agree. Used to cross-check the canonical form.
inline bool germs_agree_somewhere(const Bundle& b, const Section& s, const Section& t, std::size_t p) {
    for (const auto& w : b.base->opens()) {
        if (!w.test(p) || !w.is_subset_of(s.domain & t.domain)) continue;
        bool same = true;
        for_each_member(w, [&](std::size_t q) { same = same && s.values[q] == t.values[q]; });
        if (same) return true;
    }
    return false;
}

struct GermSpace {
    Bundle source;
    std::vector<Germ> germs;  // indexed like etale.total
    Bundle etale;             // germ space over the source base

    std::size_t find(const Germ& g) const {
        auto id = germ_id(source, g);
        return etale.total->index(id);
    }
};

/// Germs are the sections over each U_p; the minimal neighbourhood of [s]_p
/// is {[s]_q | q ∈ U_p}, which is the topology generated by the images of
/// the sections s_U.
inline GermSpace etale_of(const Bundle& b) {
    std::vector<std::pair<Id, Germ>> named;
    for (std::size_t p = 0; p < b.base->size(); ++p)
        for (auto& s : sections(b, b.base->min_nbhd(p))) {
            Germ g{p, std::move(s)};
            named.emplace_back(germ_id(b, g), std::move(g));
        }
    std::sort(named.begin(), named.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Id> ids;
    std::vector<Germ> germs;
    for (auto& [id, g] : named) {
        ids.push_back(id);
        germs.push_back(std::move(g));
    }
    std::unordered_map<Id, std::size_t> where;
    for (std::size_t i = 0; i < ids.size(); ++i) where.emplace(ids[i], i);
    std::vector<Subset> nb;
    for (const auto& g : germs) {
        Subset u(germs.size());
        for_each_member(b.base->min_nbhd(g.point), [&](std::size_t q) {
            Germ h{q, restrict(g.rep, b.base->min_nbhd(q))};
            u.set(where.at(germ_id(b, h)));
        });
        nb.push_back(std::move(u));
    }
    auto space = share(FiniteSpace(ids, std::move(nb)));
    std::vector<std::size_t> proj;
    for (const auto& g : germs) proj.push_back(g.point);
    GermSpace gs{b, std::move(germs), Bundle::create(SpaceMap(space, b.base, std::move(proj)))};
    if (!is_etale(gs.etale)) throw InvariantViolation("etale_of: germ projection is not a local homeomorphism");
    return gs;
}

/// ε([s]_p) = s(p).
inline SpaceMap counit(const GermSpace& g) {
    std::vector<std::size_t> t;
    for (const auto& germ : g.germs) t.push_back(germ.rep.values[germ.point]);
    return {g.etale.total, g.source.total, std::move(t)};
}

struct CounitReport {
    SpaceMap map;
    bool over_base = false;    // π∘ε equals the germ projection
    bool injective = false;
    bool surjective = false;
    bool continuous = false;
    bool open = false;         // images of opens are open in the total space
    bool image_open = false;   // the image of ε is open
    bool isomorphism = false;  // homeomorphism over the base

    bool all_claimed() const { return over_base && injective && continuous && open; }
};

inline CounitReport check_counit(const GermSpace& g) {
    CounitReport r{counit(g)};
    r.over_base = compose(g.source.proj, r.map).table == g.etale.proj.table;
    r.injective = r.map.injective();
    r.surjective = r.map.surjective();
    r.continuous = is_continuous(r.map);
    r.open = is_open_map(r.map);
    r.image_open = g.source.total->is_open(r.map.image(r.map.dom->whole()));
    r.isomorphism = r.over_base && is_homeomorphism(r.map);
    return r;
}

/// h̃([s]_p) = [h∘s]_p for a bundle morphism h: X → Y.
inline SpaceMap coreflect_morphism(const SpaceMap& h, const GermSpace& gx, const GermSpace& gy) {
    if (!is_bundle_morphism(h, gx.source, gy.source))
        throw PreconditionError("coreflect_morphism: not a bundle morphism");
    std::vector<std::size_t> t;
    for (const auto& g : gx.germs) {
        Germ image{g.point, g.rep};
        for_each_member(g.rep.domain, [&](std::size_t q) { image.rep.values[q] = h.table[g.rep.values[q]]; });
        auto k = gy.find(image);
        if (k == npos) throw InvariantViolation("coreflect_morphism: h∘s is not a section of the target");
        t.push_back(k);
    }
    return {gx.etale.total, gy.etale.total, std::move(t)};
}

/// h̄(y) = [h∘s]_{π(y)} for h: T → X with T étalé, s the section through y
/// over U_{π(y)}.
inline SpaceMap couniversal_factorization(const Bundle& t, const SpaceMap& h, const GermSpace& gx) {
    if (!is_etale(t)) throw PreconditionError("couniversal_factorization: source is not étalé");
    if (!is_bundle_morphism(h, t, gx.source))
        throw PreconditionError("couniversal_factorization: not a bundle morphism");
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < t.total->size(); ++y) {
        auto [u, s] = section_through_point(t, y);
        const auto p = t.over(y);
        Germ g{p, restrict(s, t.base->min_nbhd(p))};
        for_each_member(g.rep.domain, [&](std::size_t q) { g.rep.values[q] = h.table[g.rep.values[q]]; });
        auto k = gx.find(g);
        if (k == npos) throw InvariantViolation("couniversal_factorization: h∘s is not a section");
        out.push_back(k);
    }
    return {t.total, gx.etale.total, std::move(out)};
}

/// Every continuous base-compatible k: T → germ space with ε∘k = h.
inline std::vector<SpaceMap> factorizations_by_search(const Bundle& t, const SpaceMap& h, const GermSpace& gx) {
    auto eps = counit(gx);
    std::vector<SpaceMap> out;
    for (auto& k : bundle_morphisms(t, gx.etale))
        if (compose(eps, k).table == h.table) out.push_back(std::move(k));
    return out;
}

/// Germwise operations [s]_p ⋄ [t]_p = [s ⋄ t]_p on canonical representatives,
/// with 0̃_p = [0̂|U_p]_p and likewise for 1.
inline RLBundle rl_germ_ops(const RLBundle& rb, const GermSpace& g) {
    const auto& b = rb.bundle;
    const auto n = g.germs.size();
    StalkOps ops;
    ops.n = n;
    for (auto& t : ops.table) t.assign(n * n, npos);
    auto combine = [&](std::size_t p, auto&& value) {
        Germ out{p, Section{b.base->min_nbhd(p), std::vector<std::size_t>(b.base->size(), npos)}};
        for_each_member(out.rep.domain, [&](std::size_t q) { out.rep.values[q] = value(q); });
        if (!is_section(b, out.rep))
            throw InvariantViolation("rl_germ_ops: pointwise combination is not a section at " + b.base->id(p));
        auto k = g.find(out);
        if (k == npos) throw InvariantViolation("rl_germ_ops: germ not found");
        return k;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = g.germs[i];
            const auto& y = g.germs[j];
            if (x.point != y.point) continue;
            for (int o = 0; o < 4; ++o)
                ops.table[o][i * n + j] = combine(x.point, [&](std::size_t q) {
                    return rb.ops.table[o][x.rep.values[q] * rb.ops.n + y.rep.values[q]];
                });
        }
    for (std::size_t p = 0; p < b.base->size(); ++p) {
        ops.zero.push_back(combine(p, [&](std::size_t q) { return rb.ops.zero[q]; }));
        ops.one.push_back(combine(p, [&](std::size_t q) { return rb.ops.one[q]; }));
    }
    return make_rl_bundle(g.etale, std::move(ops));
}

}  // namespace rlsheaf
