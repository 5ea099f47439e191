#pragma once

// Finite function spaces with the compact-open topology, currying, and the
// adjunctions relating C(B,−), B×−, Γ(B,−), π_B and the forgetful functor,
// checked by enumeration.

#include "rlsheaf/bundle.hpp"

namespace rlsheaf {

/// "{x:y,...}" in domain order; coincides with section_id for global
/// sections.
inline Id map_id(const SpaceMap& m) {
    std::string out = "{";
    for (std::size_t i = 0; i < m.table.size(); ++i) {
        if (i) out += ",";
        out += m.dom->id(i) + ":" + m.cod->id(m.table[i]);
    }
    return out + "}";
}

struct FunctionSpace {
    SpaceRef dom;
    SpaceRef cod;
    std::vector<SpaceMap> maps;  // indexed like space
    SpaceRef space;

    std::size_t find(const std::vector<std::size_t>& table) const {
        for (std::size_t i = 0; i < maps.size(); ++i)
            if (maps[i].table == table) return i;
        return npos;
    }
};

/// Continuous maps X → Y with the topology generated by S(C,U) = {f | f(C) ⊆ U}
/// for every subset C of X and open U of Y.
inline FunctionSpace compact_open_space(const SpaceRef& x, const SpaceRef& y) {
    if (x->size() > 20) throw PreconditionError("compact_open_space: domain too large to enumerate subsets");
    auto all = continuous_maps(x, y);
    std::sort(all.begin(), all.end(), [](const SpaceMap& a, const SpaceMap& b) { return map_id(a) < map_id(b); });
    std::vector<Id> ids;
    for (const auto& m : all) ids.push_back(map_id(m));
    const auto opens = y->opens();
    std::vector<Subset> subbasis;
    for (unsigned long bits = 0; bits < (1ul << x->size()); ++bits) {
        Subset c(x->size(), bits);
        for (const auto& u : opens) {
            Subset s(all.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                if (all[i].image(c).is_subset_of(u)) s.set(i);
            subbasis.push_back(std::move(s));
        }
    }
    auto space = share(FiniteSpace::generated(std::move(ids), subbasis));
    return {x, y, std::move(all), std::move(space)};
}

/// Same topology via U_f = {g | g(x) ∈ U_{f(x)} for all x}.
inline FiniteSpace compact_open_by_neighbourhoods(const FunctionSpace& fs) {
    std::vector<Subset> nb;
    for (const auto& f : fs.maps) {
        Subset u(fs.maps.size());
        for (std::size_t g = 0; g < fs.maps.size(); ++g) {
            bool inside = true;
            for (std::size_t p = 0; p < f.table.size() && inside; ++p)
                inside = fs.cod->min_nbhd(f.table[p]).test(fs.maps[g].table[p]);
            if (inside) u.set(g);
        }
        nb.push_back(std::move(u));
    }
    return {fs.space->points(), std::move(nb)};
}

/// ĥ(x)(b) = h(b,x). Throws PreconditionError if some ĥ(x) is not continuous.
inline SpaceMap curry(const SpaceMap& h, const Product& bx, const FunctionSpace& fs) {
    const auto& x = bx.proj2.cod;
    std::vector<std::size_t> out;
    for (std::size_t xi = 0; xi < x->size(); ++xi) {
        std::vector<std::size_t> row(fs.dom->size());
        for (std::size_t k = 0; k < bx.space->size(); ++k)
            if (bx.proj2.table[k] == xi) row[bx.proj1.table[k]] = h.table[k];
        auto i = fs.find(row);
        if (i == npos) throw PreconditionError("curry: a partial map is not continuous");
        out.push_back(i);
    }
    return {x, fs.space, std::move(out)};
}

/// k̄(b,x) = k(x)(b).
inline SpaceMap uncurry(const SpaceMap& k, const Product& bx, const FunctionSpace& fs) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < bx.space->size(); ++p)
        out.push_back(fs.maps[k.table[bx.proj2.table[p]]].table[bx.proj1.table[p]]);
    return {bx.space, fs.cod, std::move(out)};
}

/// Γ(B,T) as a subspace of C(B,T).
struct SectionSpace {
    FunctionSpace functions;
    Subset carrier;
    SpaceRef space;
};

inline SectionSpace section_space(const Bundle& b) {
    auto fs = compact_open_space(b.base, b.total);
    Subset carrier(fs.maps.size());
    for (std::size_t i = 0; i < fs.maps.size(); ++i) {
        bool section = true;
        for (std::size_t p = 0; p < b.base->size(); ++p) section = section && b.over(fs.maps[i].table[p]) == p;
        if (section) carrier.set(i);
    }
    auto sub = share(subspace(*fs.space, carrier));
    return {std::move(fs), std::move(carrier), std::move(sub)};
}

/// π_B(X) = (B×X → B).
struct ProductBundle {
    Product product;
    Bundle bundle;
};

inline ProductBundle product_bundle(const SpaceRef& base, const SpaceRef& x) {
    auto p = product(base, x);
    auto b = Bundle::create(p.proj1);
    return {std::move(p), std::move(b)};
}

/// ḣ: X → Γ(B,T) from h: B×X → T over B.
inline SpaceMap corestrict_to_sections(const Bundle& b, const ProductBundle& bx, const SpaceMap& h,
                                       const SectionSpace& gs) {
    for (std::size_t k = 0; k < h.table.size(); ++k)
        if (b.over(h.table[k]) != bx.product.proj1.table[k])
            throw PreconditionError("corestrict_to_sections: π∘h differs from the first projection");
    auto c = curry(h, bx.product, gs.functions);
    std::vector<std::size_t> t;
    for (auto i : c.table) {
        if (!gs.carrier.test(i)) throw InvariantViolation("corestrict_to_sections: value is not a section");
        t.push_back(gs.space->require(gs.functions.space->id(i)));
    }
    return {c.dom, gs.space, std::move(t)};
}

struct AdjunctionReport {
    std::size_t left = 0;   // size of the hom-set on the left
    std::size_t right = 0;  // size of the hom-set on the right
    bool bijection = false;
    bool round_trip = false;
    Report details;

    bool ok() const { return bijection && round_trip && details.ok(); }
};

/// Top(B×X, T) ≅ Top(X, C(B,T)) by curry/uncurry.
inline AdjunctionReport check_exponential_adjunction(const SpaceRef& base, const SpaceRef& x, const SpaceRef& t) {
    AdjunctionReport r;
    auto bx = product(base, x);
    auto fs = compact_open_space(base, t);
    auto left = continuous_maps(bx.space, t);
    auto right = continuous_maps(x, fs.space);
    r.left = left.size();
    r.right = right.size();
    std::set<std::vector<std::size_t>> images;
    r.round_trip = true;
    for (const auto& h : left) {
        auto c = curry(h, bx, fs);
        if (!is_continuous(c)) r.details.add("curry continuous", map_id(h));
        images.insert(c.table);
        if (uncurry(c, bx, fs).table != h.table) r.round_trip = false;
    }
    for (const auto& k : right) {
        auto u = uncurry(k, bx, fs);
        if (!is_continuous(u)) r.details.add("uncurry continuous", map_id(k));
        if (curry(u, bx, fs).table != k.table) r.round_trip = false;
    }
    r.bijection = images.size() == r.left && r.left == r.right;
    return r;
}

/// Bundle(B)(π_B(X), b) ≅ Top(X, Γ(B,b)) by corestriction.
inline AdjunctionReport check_section_adjunction(const Bundle& b, const SpaceRef& x) {
    AdjunctionReport r;
    auto bx = product_bundle(b.base, x);
    auto gs = section_space(b);
    auto left = bundle_morphisms(bx.bundle, b);
    auto right = continuous_maps(x, gs.space);
    r.left = left.size();
    r.right = right.size();
    std::set<std::vector<std::size_t>> images;
    r.round_trip = true;
    for (const auto& h : left) {
        auto c = corestrict_to_sections(b, bx, h, gs);
        if (!is_continuous(c)) r.details.add("corestriction continuous", map_id(h));
        images.insert(c.table);
        std::vector<std::size_t> lifted;
        for (auto v : c.table) lifted.push_back(gs.functions.space->require(gs.space->id(v)));
        if (uncurry(SpaceMap(x, gs.functions.space, lifted), bx.product, gs.functions).table != h.table)
            r.round_trip = false;
    }
    r.bijection = images.size() == r.left && r.left == r.right;
    return r;
}

/// Top(U_B(X,f), Y) ≅ Bundle(B)((X,f), π_B(Y)) by g ↦ ⟨f,g⟩.
inline AdjunctionReport check_projection_adjunction(const Bundle& xf, const SpaceRef& y) {
    AdjunctionReport r;
    auto by = product_bundle(xf.base, y);
    auto left = continuous_maps(xf.total, y);
    auto right = bundle_morphisms(xf, by.bundle);
    r.left = left.size();
    r.right = right.size();
    std::set<std::vector<std::size_t>> images;
    r.round_trip = true;
    for (const auto& g : left) {
        std::vector<std::size_t> t;
        for (std::size_t p = 0; p < xf.total->size(); ++p)
            t.push_back(by.product.space->require(pair_id(xf.base->id(xf.over(p)), y->id(g.table[p]))));
        SpaceMap pairing(xf.total, by.product.space, t);
        if (!is_bundle_morphism(pairing, xf, by.bundle)) r.details.add("pairing is a bundle morphism", map_id(g));
        images.insert(t);
        if (compose(by.product.proj2, pairing).table != g.table) r.round_trip = false;
    }
    r.bijection = images.size() == r.left && r.left == r.right;
    return r;
}

// --- topological residuated lattices ------------------------------------------------

struct TopologicalRL {
    LatticeRef algebra;
    SpaceRef topology;  // points are the algebra's element ids
};

/// Each binary operation continuous from the product topology:
/// op(U_x × U_y) ⊆ U_{op(x,y)}. Constants are always continuous.
inline Report check_topological_rl(const TopologicalRL& a) {
    Report r;
    const auto& l = *a.algebra;
    const auto& s = *a.topology;
    if (s.points() != l.ids()) {
        r.add("carrier", "topology points differ from algebra elements");
        return r;
    }
    using Op = Elem (ResiduatedLattice::*)(Elem, Elem) const;
    const std::pair<const char*, Op> ops[] = {{"∨", &ResiduatedLattice::join},
                                              {"∧", &ResiduatedLattice::meet},
                                              {"⊙", &ResiduatedLattice::mul},
                                              {"→", &ResiduatedLattice::imp}};
    for (auto [name, op] : ops) {
        bool failed = false;
        for (Elem x = 0; x < l.size() && !failed; ++x)
            for (Elem y = 0; y < l.size() && !failed; ++y) {
                const auto& target = s.min_nbhd((l.*op)(x, y));
                for_each_member(s.min_nbhd(x), [&](std::size_t u) {
                    for_each_member(s.min_nbhd(y), [&](std::size_t v) {
                        if (!failed && !target.test((l.*op)(u, v))) {
                            r.add(std::string(name) + " continuous", "at (" + l.id(x) + "," + l.id(y) + ")");
                            failed = true;
                        }
                    });
                });
            }
    }
    return r;
}

/// C(B, A) with pointwise operations and the compact-open topology.
inline TopologicalRL lift_compact_open_rl(const SpaceRef& base, const TopologicalRL& a) {
    auto fs = compact_open_space(base, a.topology);
    const auto& l = *a.algebra;
    const auto k = fs.maps.size();
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < k; ++i) index.emplace(fs.maps[i].table, i);
    auto find = [&](const std::vector<std::size_t>& t) {
        auto it = index.find(t);
        if (it == index.end()) throw InvariantViolation("lift_compact_open_rl: pointwise result is not continuous");
        return it->second;
    };
    RLTables t;
    t.carrier = fs.space->points();
    t.leq.assign(k * k, 0);
    std::vector<std::size_t>* dst[] = {&t.join, &t.meet, &t.mul, &t.imp};
    using Op = Elem (ResiduatedLattice::*)(Elem, Elem) const;
    const Op ops[] = {&ResiduatedLattice::join, &ResiduatedLattice::meet, &ResiduatedLattice::mul,
                      &ResiduatedLattice::imp};
    for (int o = 0; o < 4; ++o) dst[o]->assign(k * k, 0);
    std::vector<std::size_t> row(base->size());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (int o = 0; o < 4; ++o) {
                for (std::size_t p = 0; p < row.size(); ++p)
                    row[p] = (l.*ops[o])(fs.maps[i].table[p], fs.maps[j].table[p]);
                (*dst[o])[i * k + j] = find(row);
            }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t.leq[i * k + j] = t.join[i * k + j] == j;
    std::fill(row.begin(), row.end(), l.bot());
    t.bot = find(row);
    std::fill(row.begin(), row.end(), l.top());
    t.top = find(row);
    return {share(ResiduatedLattice::create(std::move(t))), fs.space};
}

/// Γ(B, b) with pointwise operations and the subspace-of-compact-open
/// topology.
inline TopologicalRL sections_as_topological_rl(const RLBundle& rb) {
    auto alg = pointwise_rl_on_sections(rb, rb.base()->whole());
    auto gs = section_space(rb.bundle);
    if (gs.space->points() != alg.algebra->ids())
        throw InvariantViolation("sections_as_topological_rl: section sets disagree");
    return {alg.algebra, gs.space};
}

/// π_B lifted: B × A → B with (b|x) ⋄ (b|y) = (b|x ⋄ y).
inline RLBundle product_rl_bundle(const SpaceRef& base, const TopologicalRL& a) {
    auto pb = product_bundle(base, a.topology);
    const auto& l = *a.algebra;
    const auto& sp = *pb.product.space;
    const auto n = sp.size();
    StalkOps ops;
    ops.n = n;
    using Op = Elem (ResiduatedLattice::*)(Elem, Elem) const;
    const Op fns[] = {&ResiduatedLattice::join, &ResiduatedLattice::meet, &ResiduatedLattice::mul,
                      &ResiduatedLattice::imp};
    auto at = [&](std::size_t b, Elem x) { return sp.require(pair_id(base->id(b), l.id(x))); };
    for (int o = 0; o < 4; ++o) {
        ops.table[o].assign(n * n, npos);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto b = pb.product.proj1.table[i];
                if (b != pb.product.proj1.table[j]) continue;
                ops.table[o][i * n + j] =
                    at(b, (l.*fns[o])(pb.product.proj2.table[i], pb.product.proj2.table[j]));
            }
    }
    for (std::size_t b = 0; b < base->size(); ++b) {
        ops.zero.push_back(at(b, l.bot()));
        ops.one.push_back(at(b, l.top()));
    }
    return {pb.bundle, std::move(ops)};
}

/// C(B,Y) ≅ Γ(B, π_B(Y)) as spaces (upper triangle) and B×Y = U_B(π_B(Y))
/// (lower triangle), plus the action on a map g: Y → Y'.
inline Report check_triangle_identities(const SpaceRef& base, const std::vector<SpaceRef>& args,
                                        const std::vector<SpaceMap>& maps = {}) {
    Report r;
    auto iso_to_sections = [&](const SpaceRef& y, const FunctionSpace& fs, const SectionSpace& gs,
                               const ProductBundle& py) {
        std::vector<std::size_t> t;
        for (const auto& f : fs.maps) {
            std::vector<std::size_t> graph;
            for (std::size_t p = 0; p < base->size(); ++p)
                graph.push_back(py.product.space->require(pair_id(base->id(p), y->id(f.table[p]))));
            std::size_t k = npos;
            for (std::size_t i = 0; i < gs.functions.maps.size(); ++i)
                if (gs.carrier.test(i) && gs.functions.maps[i].table == graph) k = i;
            t.push_back(k == npos ? npos : gs.space->require(gs.functions.space->id(k)));
        }
        return t;
    };
    for (const auto& y : args) {
        auto fs = compact_open_space(base, y);
        auto py = product_bundle(base, y);
        auto gs = section_space(py.bundle);
        auto t = iso_to_sections(y, fs, gs, py);
        if (std::count(t.begin(), t.end(), npos) || t.size() != gs.space->size()) {
            r.add("C(B,Y) = Γ(B,π_B(Y)) on points", "Y with " + std::to_string(y->size()) + " points");
            continue;
        }
        if (!is_homeomorphism(SpaceMap(fs.space, gs.space, t)))
            r.add("C(B,Y) = Γ(B,π_B(Y)) as spaces", "Y with " + std::to_string(y->size()) + " points");
        auto bxy = product(base, y);
        if (!(*bxy.space == *py.bundle.total)) r.add("B×Y = U_B(π_B(Y))", "total space differs");
    }
    for (const auto& g : maps) {
        auto f1 = compact_open_space(base, g.dom), f2 = compact_open_space(base, g.cod);
        auto p1 = product_bundle(base, g.dom), p2 = product_bundle(base, g.cod);
        auto g1 = section_space(p1.bundle), g2 = section_space(p2.bundle);
        auto i1 = iso_to_sections(g.dom, f1, g1, p1), i2 = iso_to_sections(g.cod, f2, g2, p2);
        // C(B,g)(f) = g∘f versus Γ(B,1×g)(σ) = (1×g)∘σ, compared through the isos
        for (std::size_t i = 0; i < f1.maps.size(); ++i) {
            auto gf = f2.find(compose(g, f1.maps[i]).table);
            const auto& sigma = g1.functions.maps[g1.functions.space->require(g1.space->id(i1[i]))];
            std::vector<std::size_t> pushed;
            for (std::size_t p = 0; p < base->size(); ++p) {
                auto k = sigma.table[p];
                pushed.push_back(p2.product.space->require(
                    pair_id(base->id(p), g.cod->id(g.table[p1.product.proj2.table[k]]))));
            }
            const auto& expect = g2.functions.maps[g2.functions.space->require(g2.space->id(i2[gf]))];
            if (expect.table != pushed) r.add("triangle on morphisms", map_id(g));
        }
    }
    return r;
}

}  // namespace rlsheaf
