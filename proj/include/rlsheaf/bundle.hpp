#pragma once

// Bundles π: T → B over finite bases, stalkwise residuated-lattice structure,
// sections, and morphisms over a fixed base.

#include "rlsheaf/fintop.hpp"
#include "rlsheaf/rlcore.hpp"

#include <array>
#include <map>
#include <set>
#include <tuple>

namespace rlsheaf {

struct Bundle {
    SpaceRef total;
    SpaceRef base;
    SpaceMap proj;

    /// Throws PreconditionError when the projection is not continuous.
    static Bundle create(SpaceMap proj) {
        if (!is_continuous(proj)) throw PreconditionError("bundle: projection is not continuous");
        return {proj.dom, proj.cod, std::move(proj)};
    }

    std::size_t over(std::size_t t) const { return proj.table[t]; }

    /// π⁻¹(p) as a subset of the total space.
    Subset fibre(std::size_t p) const { return proj.preimage(make_subset(base->size(), {p})); }
};

inline FiniteSpace stalk(const Bundle& b, const Id& p) { return subspace(*b.total, b.fibre(b.base->require(p))); }

inline bool is_etale(const Bundle& b) { return is_local_homeomorphism(b.proj); }

inline Bundle identity_bundle(const SpaceRef& base) { return Bundle::create(identity_map(base)); }

/// The kernel pair κ_π = T ×_B T with its two projections.
inline Pullback kernel_pair(const Bundle& b) { return pullback_space(b.proj, b.proj); }

// --- stalkwise operations -------------------------------------------------------

enum class StalkOp { join, meet, mul, imp };
inline constexpr StalkOp kStalkOps[] = {StalkOp::join, StalkOp::meet, StalkOp::mul, StalkOp::imp};

inline const char* op_name(StalkOp op) {
    switch (op) {
        case StalkOp::join: return "∨";
        case StalkOp::meet: return "∧";
        case StalkOp::mul: return "⊙";
        case StalkOp::imp: return "→";
    }
    return "?";
}

inline const char* op_key(StalkOp op) {
    switch (op) {
        case StalkOp::join: return "join";
        case StalkOp::meet: return "meet";
        case StalkOp::mul: return "mul";
        case StalkOp::imp: return "imp";
    }
    return "?";
}

/// Dense tables over total-space indices: table[op][s * n + t] for s, t in
/// the same stalk, npos across stalks. zero/one are indexed by base point.
struct StalkOps {
    std::size_t n = 0;
    std::array<std::vector<std::size_t>, 4> table;
    std::vector<std::size_t> zero, one;

    std::size_t apply(StalkOp op, std::size_t s, std::size_t t) const {
        return table[static_cast<int>(op)][s * n + t];
    }

    friend bool operator==(const StalkOps&, const StalkOps&) = default;
};

/// Each base point carries a lattice and an injective renaming of its
/// elements onto the fibre.
struct StalkAssignment {
    LatticeRef lattice;
    std::map<Id, Id> to_total;
};

/// Ops transported from per-point algebras. Throws PreconditionError when a
/// renaming is not a bijection onto the fibre.
inline StalkOps stalk_ops_from_lattices(const Bundle& b, const std::map<Id, StalkAssignment>& stalks) {
    const auto n = b.total->size();
    StalkOps ops;
    ops.n = n;
    for (auto& t : ops.table) t.assign(n * n, npos);
    ops.zero.assign(b.base->size(), npos);
    ops.one.assign(b.base->size(), npos);
    for (std::size_t p = 0; p < b.base->size(); ++p) {
        auto it = stalks.find(b.base->id(p));
        if (it == stalks.end()) throw PreconditionError("stalk ops: no algebra over '" + b.base->id(p) + "'");
        const auto& [l, ren] = it->second;
        std::vector<std::size_t> where(l->size(), npos);
        Subset hit(n);
        for (const auto& [e, t] : ren) {
            auto ti = b.total->require(t);
            if (b.over(ti) != p) throw PreconditionError("stalk ops: '" + t + "' is not over '" + b.base->id(p) + "'");
            where[l->require(e)] = ti;
            hit.set(ti);
        }
        for (auto w : where)
            if (w == npos) throw PreconditionError("stalk ops: renaming over '" + b.base->id(p) + "' is not total");
        if (hit != b.fibre(p) || hit.count() != l->size())
            throw PreconditionError("stalk ops: renaming over '" + b.base->id(p) + "' is not onto the fibre");
        for (Elem x = 0; x < l->size(); ++x)
            for (Elem y = 0; y < l->size(); ++y) {
                const auto s = where[x] * n + where[y];
                ops.table[0][s] = where[l->join(x, y)];
                ops.table[1][s] = where[l->meet(x, y)];
                ops.table[2][s] = where[l->mul(x, y)];
                ops.table[3][s] = where[l->imp(x, y)];
            }
        ops.zero[p] = where[l->bot()];
        ops.one[p] = where[l->top()];
    }
    return ops;
}

/// The f-proper form of one stalk operation: κ_π → T, (s|t) ↦ s ⋄ t.
inline SpaceMap proper_map_from_stalk_ops(const Bundle& b, const Pullback& kappa, const StalkOps& ops,
                                          StalkOp op) {
    std::vector<std::size_t> t(kappa.space->size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        auto v = ops.apply(op, kappa.proj1.table[k], kappa.proj2.table[k]);
        if (v == npos) throw PreconditionError("proper map: stalk table has a hole");
        t[k] = v;
    }
    return {kappa.space, b.total, std::move(t)};
}

/// True when π∘m equals π∘p₁ (= π∘p₂) on κ_π.
inline bool is_proper(const Bundle& b, const Pullback& kappa, const SpaceMap& m) {
    for (std::size_t k = 0; k < kappa.space->size(); ++k)
        if (b.over(m.table[k]) != b.over(kappa.proj1.table[k])) return false;
    return true;
}

/// Inverse of the correspondence: reads the tables back from four proper
/// maps and the two constant sections.
inline StalkOps stalk_ops_from_proper_maps(const Bundle& b, const Pullback& kappa,
                                           const std::array<SpaceMap, 4>& maps, const SpaceMap& zero,
                                           const SpaceMap& one) {
    const auto n = b.total->size();
    StalkOps ops;
    ops.n = n;
    for (int i = 0; i < 4; ++i) {
        if (!is_proper(b, kappa, maps[i])) throw PreconditionError("stalk ops: map is not proper");
        ops.table[i].assign(n * n, npos);
        for (std::size_t k = 0; k < kappa.space->size(); ++k)
            ops.table[i][kappa.proj1.table[k] * n + kappa.proj2.table[k]] = maps[i].table[k];
    }
    ops.zero = zero.table;
    ops.one = one.table;
    return ops;
}

/// Constant section p ↦ 0_p (or 1_p) as a map base → total.
inline SpaceMap constant_section(const Bundle& b, const std::vector<std::size_t>& values) {
    return {b.base, b.total, values};
}

/// The algebra on the fibre over p, with total ids as elements and the
/// order read off the join table.
inline RLTables stalk_tables(const Bundle& b, const StalkOps& ops, std::size_t p) {
    auto fib = members(b.fibre(p));
    const auto k = fib.size();
    std::vector<std::size_t> local(b.total->size(), npos);
    for (std::size_t i = 0; i < k; ++i) local[fib[i]] = i;
    RLTables t;
    for (auto x : fib) t.carrier.push_back(b.total->id(x));
    t.leq.assign(k * k, 0);
    std::vector<std::size_t>* dst[] = {&t.join, &t.meet, &t.mul, &t.imp};
    for (int o = 0; o < 4; ++o) dst[o]->assign(k * k, 0);
    auto loc = [&](std::size_t v) {
        if (v == npos || local[v] == npos)
            throw ValidationError("stalk over '" + b.base->id(p) + "' is not closed under its operations", {});
        return local[v];
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (int o = 0; o < 4; ++o) (*dst[o])[i * k + j] = loc(ops.table[o][fib[i] * ops.n + fib[j]]);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t.leq[i * k + j] = t.join[i * k + j] == j;
    t.bot = loc(ops.zero.at(p));
    t.top = loc(ops.one.at(p));
    return t;
}

inline ResiduatedLattice stalk_algebra(const Bundle& b, const StalkOps& ops, const Id& p) {
    return ResiduatedLattice::create(stalk_tables(b, ops, b.base->require(p)));
}

struct RLBundle {
    Bundle bundle;
    StalkOps ops;

    const SpaceRef& total() const { return bundle.total; }
    const SpaceRef& base() const { return bundle.base; }
};

/// (i) stalks are residuated lattices, (ii) the four proper maps are
/// continuous on κ_π, (iii) 0̂ and 1̂ are continuous global sections, (iv) π is
/// surjective.
inline Report verify_rl_bundle(const RLBundle& rb) {
    Report r;
    const auto& b = rb.bundle;
    if (!b.proj.surjective()) r.add("projection surjective", "some stalk is empty");
    if (rb.ops.n != b.total->size() || rb.ops.zero.size() != b.base->size() ||
        rb.ops.one.size() != b.base->size()) {
        r.add("table shape", "stalk tables do not match the bundle");
        return r;
    }
    for (std::size_t p = 0; p < b.base->size(); ++p) {
        try {
            r.merge(verify_rl(stalk_tables(b, rb.ops, p)), "stalk " + b.base->id(p) + ": ");
        } catch (const ValidationError& e) {
            r.add("stalk closed under operations", e.what());
        }
    }
    if (!r.ok()) return r;
    auto kappa = kernel_pair(b);
    for (auto op : kStalkOps) {
        auto m = proper_map_from_stalk_ops(b, kappa, rb.ops, op);
        if (!is_continuous(m)) {
            for (std::size_t k = 0; k < kappa.space->size(); ++k)
                if (!m.image(kappa.space->min_nbhd(k)).is_subset_of(b.total->min_nbhd(m.table[k]))) {
                    r.add(std::string("continuity of ") + op_name(op) + " on the kernel pair",
                          "at " + kappa.space->id(k));
                    break;
                }
        }
    }
    for (auto [name, vals] : {std::pair{"0", &rb.ops.zero}, std::pair{"1", &rb.ops.one}}) {
        auto s = constant_section(b, *vals);
        for (std::size_t p = 0; p < b.base->size(); ++p)
            if (b.over(s.table[p]) != p) r.add(std::string("constant ") + name + " is a section", b.base->id(p));
        if (!is_continuous(s)) r.add(std::string("constant ") + name + " continuous", "global section");
    }
    return r;
}

inline RLBundle make_rl_bundle(Bundle b, StalkOps ops) {
    RLBundle rb{std::move(b), std::move(ops)};
    verify_rl_bundle(rb).throw_if_failed("not a bundle of residuated lattices");
    return rb;
}

// --- sections -------------------------------------------------------------------

/// A continuous right inverse of π over `domain` (with the subspace
/// topology). values[p] is npos off the domain.
struct Section {
    Subset domain;
    std::vector<std::size_t> values;

    friend bool operator==(const Section&, const Section&) = default;
    friend bool operator<(const Section& a, const Section& b) {
        return std::tie(a.domain, a.values) < std::tie(b.domain, b.values);
    }
};

/// "{p:t,...}" over the sorted base points of the domain.
inline Id section_id(const Bundle& b, const Section& s) {
    std::string out = "{";
    bool first = true;
    for_each_member(s.domain, [&](std::size_t p) {
        if (!first) out += ",";
        out += b.base->id(p) + ":" + b.total->id(s.values[p]);
        first = false;
    });
    return out + "}";
}

inline bool is_section(const Bundle& b, const Section& s) {
    bool ok = true;
    for_each_member(s.domain, [&](std::size_t p) {
        auto t = s.values[p];
        if (t == npos || t >= b.total->size() || b.over(t) != p) {
            ok = false;
            return;
        }
        for_each_member(b.base->min_nbhd(p) & s.domain, [&](std::size_t q) {
            if (!b.total->min_nbhd(t).test(s.values[q])) ok = false;
        });
    });
    return ok;
}

inline Section restrict(const Section& s, const Subset& to) {
    if (!to.is_subset_of(s.domain)) throw PreconditionError("restrict: not a subset of the domain");
    Section r{to, std::vector<std::size_t>(s.values.size(), npos)};
    for_each_member(to, [&](std::size_t p) { r.values[p] = s.values[p]; });
    return r;
}

/// Γ(X, T), in lexicographic order of the value tables.
inline std::vector<Section> sections(const Bundle& b, const Subset& x) {
    auto keep = members(x);
    auto dom = subspace(*b.base, x);
    std::vector<Subset> allowed;
    for (auto p : keep) allowed.push_back(b.fibre(p));
    std::vector<Section> out;
    for_each_continuous_map(dom, *b.total, allowed, [&](const std::vector<std::size_t>& t) {
        Section s{x, std::vector<std::size_t>(b.base->size(), npos)};
        for (std::size_t i = 0; i < keep.size(); ++i) s.values[keep[i]] = t[i];
        out.push_back(std::move(s));
    });
    return out;
}

inline std::vector<Section> global_sections(const Bundle& b) { return sections(b, b.base->whole()); }

/// For an étalé, the section through t over the open π(U_t); U_t maps
/// homeomorphically onto it.
inline std::pair<Subset, Section> section_through_point(const Bundle& e, std::size_t t) {
    if (!is_etale(e)) throw PreconditionError("section_through_point: bundle is not étalé");
    const auto& ut = e.total->min_nbhd(t);
    Subset u = e.proj.image(ut);
    Section s{u, std::vector<std::size_t>(e.base->size(), npos)};
    for_each_member(ut, [&](std::size_t x) { s.values[e.over(x)] = x; });
    if (!e.base->is_open(u) || !is_section(e, s) || s.values[e.over(t)] != t)
        throw InvariantViolation("section_through_point: local homeomorphism did not yield a section");
    return {u, s};
}

/// σ(U) as a subset of the total space.
inline Subset section_image(const Bundle& b, const Section& s) {
    Subset out(b.total->size());
    for_each_member(s.domain, [&](std::size_t p) { out.set(s.values[p]); });
    return out;
}

struct EqualizerFacts {
    Subset set;
    bool open = false;
    bool clopen = false;
};

/// Eq(σ,τ) = {p ∈ dom σ ∩ dom τ | σ(p) = τ(p)} and its openness in the base.
inline EqualizerFacts equalizer(const Bundle& b, const Section& s1, const Section& s2) {
    EqualizerFacts f{s1.domain & s2.domain};
    for_each_member(s1.domain & s2.domain, [&](std::size_t p) {
        if (s1.values[p] != s2.values[p]) f.set.reset(p);
    });
    f.open = b.base->is_open(f.set);
    f.clopen = f.open && b.base->is_closed(f.set);
    return f;
}

/// {σ(U) | U open, σ ∈ Γ(U)}; deduplicated.
inline std::vector<Subset> section_image_basis(const Bundle& b) {
    std::set<Subset> out;
    for (const auto& u : b.base->opens())
        for (const auto& s : sections(b, u)) out.insert(section_image(b, s));
    return {out.begin(), out.end()};
}

/// The total space's topology recomputed as the final topology of all
/// sections over opens.
inline FiniteSpace final_topology_of_sections(const Bundle& b) {
    std::vector<MapIntoSet> fam;
    for (const auto& u : b.base->opens()) {
        auto dom = share(subspace(*b.base, u));
        for (const auto& s : sections(b, u)) {
            MapIntoSet m{dom, {}};
            for_each_member(u, [&](std::size_t p) { m.images.push_back(b.total->id(s.values[p])); });
            fam.push_back(std::move(m));
        }
    }
    return final_topology(b.total->points(), fam);
}

// --- sections as an algebra ------------------------------------------------------

struct SectionAlgebra {
    LatticeRef algebra;
    std::vector<Section> sections;  // indexed like the algebra's elements
};

/// Γ(X, T) with pointwise operations. Throws InvariantViolation naming the
/// first pointwise combination that is not a section.
inline SectionAlgebra pointwise_rl_on_sections(const RLBundle& rb, const Subset& x) {
    const auto& b = rb.bundle;
    auto secs = sections(b, x);
    std::vector<std::pair<Id, Section>> named;
    for (auto& s : secs) named.emplace_back(section_id(b, s), std::move(s));
    std::sort(named.begin(), named.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    const auto k = named.size();
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < k; ++i) index.emplace(named[i].second.values, i);
    auto find = [&](const std::vector<std::size_t>& vals, const std::string& what) {
        auto it = index.find(vals);
        if (it == index.end()) {
            Section bad{x, vals};
            throw InvariantViolation("pointwise " + what + " is not a section: " + section_id(b, bad));
        }
        return it->second;
    };
    RLTables t;
    for (const auto& [id, s] : named) t.carrier.push_back(id);
    t.leq.assign(k * k, 0);
    std::vector<std::size_t>* dst[] = {&t.join, &t.meet, &t.mul, &t.imp};
    for (int o = 0; o < 4; ++o) dst[o]->assign(k * k, 0);
    std::vector<std::size_t> vals(b.base->size(), npos);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (int o = 0; o < 4; ++o) {
                for_each_member(x, [&](std::size_t p) {
                    vals[p] = rb.ops.table[o][named[i].second.values[p] * rb.ops.n + named[j].second.values[p]];
                });
                (*dst[o])[i * k + j] = find(vals, op_name(kStalkOps[o]));
            }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t.leq[i * k + j] = t.join[i * k + j] == j;
    for_each_member(x, [&](std::size_t p) { vals[p] = rb.ops.zero[p]; });
    t.bot = find(vals, "0");
    for_each_member(x, [&](std::size_t p) { vals[p] = rb.ops.one[p]; });
    t.top = find(vals, "1");
    SectionAlgebra out{share(ResiduatedLattice::create(std::move(t))), {}};
    for (auto& [id, s] : named) out.sections.push_back(std::move(s));
    return out;
}

// --- morphisms over a fixed base ---------------------------------------------------

/// φ∘h = π with h: total(src) → total(dst) continuous.
inline bool is_bundle_morphism(const SpaceMap& h, const Bundle& src, const Bundle& dst) {
    if (!same_space(h.dom, src.total) || !same_space(h.cod, dst.total) || !same_space(src.base, dst.base))
        return false;
    for (std::size_t t = 0; t < h.table.size(); ++t)
        if (dst.over(h.table[t]) != src.over(t)) return false;
    return is_continuous(h);
}

/// Bundle morphism whose stalk restrictions are all RL morphisms; reports the
/// first failing stalk and operation.
inline Report check_rl_bundle_morphism(const SpaceMap& h, const RLBundle& src, const RLBundle& dst) {
    Report r;
    if (!is_bundle_morphism(h, src.bundle, dst.bundle)) {
        r.add("bundle morphism", "not continuous or not over the base");
        return r;
    }
    const auto& b = src.bundle;
    for (std::size_t p = 0; p < b.base->size(); ++p) {
        if (h.table[src.ops.zero[p]] != dst.ops.zero[p]) r.add("preserves 0", "stalk " + b.base->id(p));
        if (h.table[src.ops.one[p]] != dst.ops.one[p]) r.add("preserves 1", "stalk " + b.base->id(p));
        auto fib = members(b.fibre(p));
        for (auto op : kStalkOps) {
            bool done = false;
            for (auto x : fib)
                for (auto y : fib) {
                    if (done) break;
                    if (h.table[src.ops.apply(op, x, y)] != dst.ops.apply(op, h.table[x], h.table[y])) {
                        r.add(std::string("preserves ") + op_name(op),
                              "stalk " + b.base->id(p) + " at (" + b.total->id(x) + "," + b.total->id(y) + ")");
                        done = true;
                    }
                }
        }
    }
    return r;
}

inline bool is_rl_bundle_morphism(const SpaceMap& h, const RLBundle& src, const RLBundle& dst) {
    return check_rl_bundle_morphism(h, src, dst).ok();
}

/// The square form: h∘⋄^π = ⋄^φ∘(h×h) on κ_π and h∘0̂ = 0̂, h∘1̂ = 1̂.
inline bool rl_bundle_square_commutes(const SpaceMap& h, const RLBundle& src, const RLBundle& dst) {
    if (!is_bundle_morphism(h, src.bundle, dst.bundle)) return false;
    auto ks = kernel_pair(src.bundle);
    auto kd = kernel_pair(dst.bundle);
    std::vector<std::size_t> hh(ks.space->size());
    for (std::size_t k = 0; k < hh.size(); ++k) {
        auto id = pair_id(dst.total()->id(h.table[ks.proj1.table[k]]), dst.total()->id(h.table[ks.proj2.table[k]]));
        hh[k] = kd.space->require(id);
    }
    SpaceMap hxh(ks.space, kd.space, hh);
    for (auto op : kStalkOps) {
        auto left = compose(h, proper_map_from_stalk_ops(src.bundle, ks, src.ops, op));
        auto right = compose(proper_map_from_stalk_ops(dst.bundle, kd, dst.ops, op), hxh);
        if (left.table != right.table) return false;
    }
    return compose(h, constant_section(src.bundle, src.ops.zero)).table == dst.ops.zero &&
           compose(h, constant_section(src.bundle, src.ops.one)).table == dst.ops.one;
}

/// All continuous maps total(src) → total(dst) over the base.
inline std::vector<SpaceMap> bundle_morphisms(const Bundle& src, const Bundle& dst) {
    std::vector<Subset> allowed;
    for (std::size_t t = 0; t < src.total->size(); ++t) allowed.push_back(dst.fibre(src.over(t)));
    return continuous_maps(src.total, dst.total, allowed);
}

}  // namespace rlsheaf
