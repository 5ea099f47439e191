#pragma once

// Finite topological spaces and continuous maps.
//
// A finite space is Alexandrov: every point p has a least open neighbourhood
// U_p, and a subset is open iff it contains U_p for each of its points. The
// whole topology is therefore kept as the per-point family U_p; the explicit
// open family is available through FiniteSpace::opens().

#include "rlsheaf/common.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>

namespace rlsheaf {

class FiniteSpace {
public:
    FiniteSpace() = default;

    /// Points must be sorted and unique; nbhds[i] must be the least open
    /// neighbourhood of point i (reflexive and transitive as a relation).
    FiniteSpace(std::vector<Id> points, std::vector<Subset> nbhds)
        : points_(std::move(points)), nbhd_(std::move(nbhds)) {
        if (!std::is_sorted(points_.begin(), points_.end()) ||
            std::adjacent_find(points_.begin(), points_.end()) != points_.end())
            throw PreconditionError("FiniteSpace: point ids must be sorted and unique");
        if (nbhd_.size() != points_.size())
            throw PreconditionError("FiniteSpace: one neighbourhood per point required");
        for (std::size_t i = 0; i < points_.size(); ++i) {
            index_.emplace(points_[i], i);
            if (nbhd_[i].size() != points_.size() || !nbhd_[i].test(i))
                throw PreconditionError("FiniteSpace: neighbourhood of " + points_[i] +
                                        " must contain it");
        }
        for (std::size_t i = 0; i < points_.size(); ++i)
            for_each_member(nbhd_[i], [&](std::size_t j) {
                if (!nbhd_[j].is_subset_of(nbhd_[i]))
                    throw PreconditionError("FiniteSpace: neighbourhood family not transitive at " +
                                            points_[i]);
            });
    }

    static FiniteSpace discrete(std::vector<Id> points) {
        sort_unique(points);
        std::vector<Subset> nb;
        for (std::size_t i = 0; i < points.size(); ++i) nb.push_back(make_subset(points.size(), {i}));
        return {std::move(points), std::move(nb)};
    }

    static FiniteSpace indiscrete(std::vector<Id> points) {
        sort_unique(points);
        std::vector<Subset> nb(points.size(), full_subset(points.size()));
        return {std::move(points), std::move(nb)};
    }

    /// Coarsest topology containing every member of `subbasis` (subsets over
    /// the sorted `points`). U_p is the intersection of the members holding p.
    static FiniteSpace generated(std::vector<Id> points, const std::vector<Subset>& subbasis) {
        const auto n = points.size();
        std::vector<Subset> nb(n, full_subset(n));
        for (const auto& s : subbasis) {
            if (s.size() != n) throw PreconditionError("generated topology: subset size mismatch");
            for_each_member(s, [&](std::size_t p) { nb[p] &= s; });
        }
        return {std::move(points), std::move(nb)};
    }

    /// Builds a space from an explicit open family; throws ValidationError
    /// carrying the verify_topology report when the family is not a topology.
    static FiniteSpace from_opens(std::vector<Id> points, const std::vector<std::vector<Id>>& opens);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const std::vector<Id>& points() const noexcept { return points_; }
    const Id& id(std::size_t i) const { return points_.at(i); }

    std::size_t index(const Id& id) const {
        auto it = index_.find(id);
        return it == index_.end() ? npos : it->second;
    }
    std::size_t require(const Id& id) const {
        auto i = index(id);
        if (i == npos) throw PreconditionError("unknown point '" + id + "'");
        return i;
    }
    bool contains(const Id& id) const { return index(id) != npos; }

    const Subset& min_nbhd(std::size_t i) const { return nbhd_.at(i); }
    const std::vector<Subset>& min_nbhds() const noexcept { return nbhd_; }

    Subset empty_set() const { return Subset(size()); }
    Subset whole() const { return full_subset(size()); }

    Subset subset(const std::vector<Id>& ids) const {
        Subset s(size());
        for (const auto& x : ids) s.set(require(x));
        return s;
    }

    bool is_open(const Subset& s) const {
        for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i))
            if (!nbhd_[i].is_subset_of(s)) return false;
        return true;
    }
    bool is_closed(const Subset& s) const { return is_open(~s); }

    Subset interior(const Subset& s) const {
        Subset out(size());
        for_each_member(s, [&](std::size_t i) {
            if (nbhd_[i].is_subset_of(s)) out.set(i);
        });
        return out;
    }
    Subset closure(const Subset& s) const { return ~interior(~s); }

    /// Least open set containing `s`.
    Subset open_hull(const Subset& s) const {
        Subset out(size());
        for_each_member(s, [&](std::size_t i) { out |= nbhd_[i]; });
        return out;
    }

    bool is_discrete() const {
        for (const auto& u : nbhd_)
            if (u.count() != 1) return false;
        return true;
    }

    /// Every open set, ordered by cardinality then lexicographically by ids.
    /// Throws PreconditionError once more than `limit` opens are produced.
    std::vector<Subset> opens(std::size_t limit = std::size_t{1} << 20) const {
        std::set<Subset> seen{empty_set()};
        std::vector<Subset> frontier{empty_set()};
        while (!frontier.empty()) {
            std::vector<Subset> next;
            for (const auto& o : frontier)
                for (std::size_t p = 0; p < size(); ++p) {
                    if (o.test(p)) continue;
                    Subset u = o | nbhd_[p];
                    if (seen.insert(u).second) {
                        if (seen.size() > limit)
                            throw PreconditionError("opens(): more than " + std::to_string(limit) +
                                                    " open sets");
                        next.push_back(std::move(u));
                    }
                }
            frontier = std::move(next);
        }
        std::vector<Subset> out(seen.begin(), seen.end());
        std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
            if (a.count() != b.count()) return a.count() < b.count();
            return members(a) < members(b);
        });
        return out;
    }

    std::string format(const Subset& s) const { return format_subset(s, points_); }

    friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
        return a.points_ == b.points_ && a.nbhd_ == b.nbhd_;
    }

private:
    static void sort_unique(std::vector<Id>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    std::vector<Id> points_;
    std::unordered_map<Id, std::size_t> index_;
    std::vector<Subset> nbhd_;
};

using SpaceRef = std::shared_ptr<const FiniteSpace>;

inline SpaceRef share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }

inline bool same_space(const SpaceRef& a, const SpaceRef& b) {
    return a == b || (a && b && *a == *b);
}

// --- topology validation ----------------------------------------------------

/// Checks that `family` is a topology on `points`. Each violated axiom is
/// reported once per offending set, with the witness sets that produce it.
inline Report verify_topology(const std::vector<Id>& points,
                              const std::vector<std::vector<Id>>& family) {
    Report r;
    std::vector<Id> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        r.add("distinct points", "point list contains duplicates");
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::unordered_map<Id, std::size_t> idx;
    for (std::size_t i = 0; i < sorted.size(); ++i) idx.emplace(sorted[i], i);
    const auto n = sorted.size();

    std::set<Subset> fam;
    std::vector<Subset> ordered;
    for (const auto& member : family) {
        Subset s(n);
        bool okay = true;
        for (const auto& x : member) {
            auto it = idx.find(x);
            if (it == idx.end()) {
                r.add("members are subsets of the point set", "unknown point '" + x + "'");
                okay = false;
            } else {
                s.set(it->second);
            }
        }
        if (okay && fam.insert(s).second) ordered.push_back(s);
    }
    if (!fam.count(Subset(n))) r.add("contains empty set", "{} missing");
    if (!fam.count(full_subset(n)))
        r.add("contains whole space", format_subset(full_subset(n), sorted) + " missing");
    std::set<Subset> reported_union, reported_meet;
    for (std::size_t i = 0; i < ordered.size(); ++i)
        for (std::size_t j = i + 1; j < ordered.size(); ++j) {
            const auto& a = ordered[i];
            const auto& b = ordered[j];
            Subset u = a | b, m = a & b;
            if (!fam.count(u) && reported_union.insert(u).second)
                r.add("closed under union", format_subset(a, sorted) + " ∪ " + format_subset(b, sorted) +
                                                " = " + format_subset(u, sorted) + " missing");
            if (!fam.count(m) && reported_meet.insert(m).second)
                r.add("closed under intersection", format_subset(a, sorted) + " ∩ " +
                                                       format_subset(b, sorted) + " = " +
                                                       format_subset(m, sorted) + " missing");
        }
    return r;
}

inline FiniteSpace FiniteSpace::from_opens(std::vector<Id> points,
                                           const std::vector<std::vector<Id>>& opens) {
    verify_topology(points, opens).throw_if_failed("not a topology");
    sort_unique(points);
    std::vector<Subset> fam;
    FiniteSpace bare = discrete(points);
    for (const auto& o : opens) fam.push_back(bare.subset(o));
    return generated(std::move(points), fam);
}

// --- maps ---------------------------------------------------------------------

/// A total function between the point sets of two finite spaces. Continuity
/// and the other topological properties are checked, not assumed.
struct SpaceMap {
    SpaceRef dom;
    SpaceRef cod;
    std::vector<std::size_t> table;

    SpaceMap() = default;
    SpaceMap(SpaceRef d, SpaceRef c, std::vector<std::size_t> t)
        : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
        if (!dom || !cod) throw PreconditionError("SpaceMap: null space");
        if (table.size() != dom->size()) throw PreconditionError("SpaceMap: table is not total");
        for (auto v : table)
            if (v >= cod->size()) throw PreconditionError("SpaceMap: value outside codomain");
    }

    static SpaceMap from_ids(SpaceRef d, SpaceRef c, const std::map<Id, Id>& assoc) {
        std::vector<std::size_t> t(d->size(), npos);
        for (const auto& [x, y] : assoc) {
            auto i = d->index(x);
            if (i == npos) throw PreconditionError("map: '" + x + "' is not a domain point");
            t[i] = c->require(y);
        }
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] == npos) throw PreconditionError("map: no image for '" + d->id(i) + "'");
        return {std::move(d), std::move(c), std::move(t)};
    }

    std::size_t operator()(std::size_t i) const { return table.at(i); }
    const Id& at(const Id& x) const { return cod->id(table.at(dom->require(x))); }

    Subset image(const Subset& s) const {
        Subset out(cod->size());
        for_each_member(s, [&](std::size_t i) { out.set(table[i]); });
        return out;
    }
    Subset preimage(const Subset& s) const {
        Subset out(dom->size());
        for (std::size_t i = 0; i < table.size(); ++i)
            if (s.test(table[i])) out.set(i);
        return out;
    }

    bool injective_on(const Subset& s) const {
        Subset seen(cod->size());
        bool ok = true;
        for_each_member(s, [&](std::size_t i) {
            if (seen.test(table[i])) ok = false;
            seen.set(table[i]);
        });
        return ok;
    }
    bool injective() const { return injective_on(dom->whole()); }
    bool surjective() const { return image(dom->whole()).all(); }

    std::map<Id, Id> as_ids() const {
        std::map<Id, Id> out;
        for (std::size_t i = 0; i < table.size(); ++i) out.emplace(dom->id(i), cod->id(table[i]));
        return out;
    }

    friend bool operator==(const SpaceMap& a, const SpaceMap& b) {
        return same_space(a.dom, b.dom) && same_space(a.cod, b.cod) && a.table == b.table;
    }
};

inline SpaceMap identity_map(const SpaceRef& s) {
    std::vector<std::size_t> t(s->size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return {s, s, std::move(t)};
}

/// g ∘ f.
inline SpaceMap compose(const SpaceMap& g, const SpaceMap& f) {
    if (!same_space(f.cod, g.dom)) throw PreconditionError("compose: codomain/domain mismatch");
    std::vector<std::size_t> t(f.table.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.table[f.table[i]];
    return {f.dom, g.cod, std::move(t)};
}

/// Map between spaces sharing point ids: each domain point goes to the
/// codomain point with the same id.
inline SpaceMap inclusion_map(const SpaceRef& sub, const SpaceRef& whole) {
    std::vector<std::size_t> t(sub->size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = whole->require(sub->id(i));
    return {sub, whole, std::move(t)};
}

// --- topological properties of maps -------------------------------------------

/// Preimages of opens are open. Checked through the neighbourhood form
/// f(U_p) ⊆ U_{f(p)}, which is equivalent on finite spaces.
inline bool is_continuous(const SpaceMap& m) {
    for (std::size_t p = 0; p < m.dom->size(); ++p)
        if (!m.image(m.dom->min_nbhd(p)).is_subset_of(m.cod->min_nbhd(m.table[p]))) return false;
    return true;
}

/// Literal preimage scan over every codomain open.
inline bool is_continuous_by_preimages(const SpaceMap& m) {
    for (const auto& o : m.cod->opens())
        if (!m.dom->is_open(m.preimage(o))) return false;
    return true;
}

/// Images of opens are open; it suffices to test the minimal neighbourhoods
/// since images commute with unions.
inline bool is_open_map(const SpaceMap& m) {
    for (std::size_t p = 0; p < m.dom->size(); ++p)
        if (!m.cod->is_open(m.image(m.dom->min_nbhd(p)))) return false;
    return true;
}

inline bool is_open_map_by_images(const SpaceMap& m) {
    for (const auto& o : m.dom->opens())
        if (!m.cod->is_open(m.image(o))) return false;
    return true;
}

/// Every point has a neighbourhood on which the map is injective; the least
/// neighbourhood is the one to test.
inline bool is_locally_injective(const SpaceMap& m) {
    for (std::size_t p = 0; p < m.dom->size(); ++p)
        if (!m.injective_on(m.dom->min_nbhd(p))) return false;
    return true;
}

inline bool is_local_homeomorphism(const SpaceMap& m) {
    return is_continuous(m) && is_open_map(m) && is_locally_injective(m);
}

/// Whether m restricted to the open set `v` is a homeomorphism onto an open
/// subset of the codomain (both sides with subspace topologies).
inline bool restricts_to_open_embedding(const SpaceMap& m, const Subset& v) {
    if (!m.dom->is_open(v) || !m.injective_on(v)) return false;
    Subset img = m.image(v);
    if (!m.cod->is_open(img)) return false;
    bool ok = true;
    for_each_member(v, [&](std::size_t p) {
        // continuity and openness of the restriction at p
        Subset local = m.dom->min_nbhd(p) & v;
        Subset target = m.cod->min_nbhd(m.table[p]) & img;
        if (m.image(local) != target) ok = false;
    });
    return ok;
}

/// The textbook definition: every point has an open neighbourhood V such that
/// m|V is a homeomorphism onto an open set. Scans all opens of the domain.
inline bool is_local_homeomorphism_by_definition(const SpaceMap& m) {
    const auto opens = m.dom->opens();
    for (std::size_t p = 0; p < m.dom->size(); ++p) {
        bool found = false;
        for (const auto& v : opens)
            if (v.test(p) && restricts_to_open_embedding(m, v)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

inline bool is_homeomorphism(const SpaceMap& m) {
    return m.injective() && m.surjective() && is_continuous(m) && is_open_map(m);
}

inline SpaceMap inverse_map(const SpaceMap& m) {
    if (!m.injective() || !m.surjective()) throw PreconditionError("inverse_map: not bijective");
    std::vector<std::size_t> t(m.cod->size());
    for (std::size_t i = 0; i < m.table.size(); ++i) t[m.table[i]] = i;
    return {m.cod, m.dom, std::move(t)};
}

/// Opens V of the domain on which m is a homeomorphism onto an open image.
/// For a local homeomorphism this family is a basis of the domain.
inline std::vector<Subset> local_homeo_basis(const SpaceMap& m) {
    if (!is_local_homeomorphism(m))
        throw PreconditionError("local_homeo_basis: map is not a local homeomorphism");
    std::vector<Subset> out;
    for (const auto& v : m.dom->opens())
        if (restricts_to_open_embedding(m, v)) out.push_back(v);
    return out;
}

/// A family of opens is a basis iff it contains every minimal neighbourhood.
inline bool is_basis(const FiniteSpace& s, const std::vector<Subset>& family) {
    std::set<Subset> fam(family.begin(), family.end());
    for (const auto& f : fam)
        if (!s.is_open(f)) return false;
    for (const auto& u : s.min_nbhds())
        if (!fam.count(u)) return false;
    return true;
}

inline bool is_hausdorff(const FiniteSpace& s) {
    for (std::size_t p = 0; p < s.size(); ++p)
        for (std::size_t q = p + 1; q < s.size(); ++q)
            if (s.min_nbhd(p).intersects(s.min_nbhd(q))) return false;
    return true;
}

inline Subset minimal_neighborhood(const FiniteSpace& s, const Id& p) {
    return s.min_nbhd(s.require(p));
}

// --- constructions ------------------------------------------------------------

inline FiniteSpace subspace(const FiniteSpace& s, const Subset& carrier) {
    std::vector<std::size_t> keep = members(carrier);
    std::vector<Id> ids;
    for (auto i : keep) ids.push_back(s.id(i));
    std::vector<Subset> nb;
    for (auto i : keep) {
        Subset u(keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k)
            if (s.min_nbhd(i).test(keep[k])) u.set(k);
        nb.push_back(std::move(u));
    }
    return {std::move(ids), std::move(nb)};
}

struct Product {
    SpaceRef space;
    SpaceMap proj1;
    SpaceMap proj2;
};

/// Product topology on pair ids "(x|y)"; U_(x,y) = U_x × U_y.
inline Product product(const SpaceRef& a, const SpaceRef& b) {
    struct Entry {
        Id id;
        std::size_t i, j;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < a->size(); ++i)
        for (std::size_t j = 0; j < b->size(); ++j) entries.push_back({pair_id(a->id(i), b->id(j)), i, j});
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.id < y.id; });
    std::vector<std::size_t> where(a->size() * b->size());
    for (std::size_t k = 0; k < entries.size(); ++k) where[entries[k].i * b->size() + entries[k].j] = k;
    std::vector<Id> ids;
    std::vector<Subset> nb;
    for (const auto& e : entries) {
        ids.push_back(e.id);
        Subset u(entries.size());
        for_each_member(a->min_nbhd(e.i), [&](std::size_t x) {
            for_each_member(b->min_nbhd(e.j), [&](std::size_t y) { u.set(where[x * b->size() + y]); });
        });
        nb.push_back(std::move(u));
    }
    auto space = share(FiniteSpace(std::move(ids), std::move(nb)));
    std::vector<std::size_t> p1, p2;
    for (const auto& e : entries) {
        p1.push_back(e.i);
        p2.push_back(e.j);
    }
    return {space, SpaceMap(space, a, std::move(p1)), SpaceMap(space, b, std::move(p2))};
}

/// One member of a final-topology family: a space and the image of each of
/// its points in the target carrier.
struct MapIntoSet {
    SpaceRef dom;
    std::vector<Id> images;
};

/// Finest topology on `carrier` making every family member continuous:
/// U is open iff each preimage is open. The least open set around x is
/// the closure of {x} under S ↦ S ∪ f(U_p) for f(p) ∈ S.
inline FiniteSpace final_topology(std::vector<Id> carrier, const std::vector<MapIntoSet>& family) {
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    const FiniteSpace bare = FiniteSpace::discrete(carrier);
    std::vector<std::vector<std::size_t>> tables;
    for (const auto& member : family) {
        if (member.images.size() != member.dom->size())
            throw PreconditionError("final_topology: map is not total");
        std::vector<std::size_t> t;
        for (const auto& y : member.images) {
            auto k = bare.index(y);
            if (k == npos) throw PreconditionError("final_topology: '" + y + "' is not in the carrier");
            t.push_back(k);
        }
        tables.push_back(std::move(t));
    }
    const auto n = carrier.size();
    std::vector<Subset> nb;
    for (std::size_t x = 0; x < n; ++x) {
        Subset s = make_subset(n, {x});
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t f = 0; f < family.size(); ++f) {
                const auto& dom = *family[f].dom;
                for (std::size_t p = 0; p < dom.size(); ++p) {
                    if (!s.test(tables[f][p])) continue;
                    for_each_member(dom.min_nbhd(p), [&](std::size_t q) {
                        if (!s.test(tables[f][q])) {
                            s.set(tables[f][q]);
                            changed = true;
                        }
                    });
                }
            }
        }
        nb.push_back(std::move(s));
    }
    return {std::move(carrier), std::move(nb)};
}

inline FiniteSpace final_topology(std::vector<Id> carrier, const std::vector<SpaceMap>& family) {
    std::vector<MapIntoSet> fam;
    for (const auto& m : family) {
        MapIntoSet e{m.dom, {}};
        for (auto v : m.table) e.images.push_back(m.cod->id(v));
        fam.push_back(std::move(e));
    }
    return final_topology(std::move(carrier), fam);
}

struct Pullback {
    SpaceRef space;
    SpaceMap proj1;  // to dom(f)
    SpaceMap proj2;  // to dom(g)
};

/// Fibre product {(b|s) | f(b) = g(s)} as a subspace of dom(f) × dom(g).
inline Pullback pullback_space(const SpaceMap& f, const SpaceMap& g) {
    if (!same_space(f.cod, g.cod)) throw PreconditionError("pullback_space: codomains differ");
    Product prod = product(f.dom, g.dom);
    Subset carrier(prod.space->size());
    for (std::size_t k = 0; k < prod.space->size(); ++k)
        if (f.table[prod.proj1.table[k]] == g.table[prod.proj2.table[k]]) carrier.set(k);
    auto space = share(subspace(*prod.space, carrier));
    std::vector<std::size_t> p1, p2;
    for_each_member(carrier, [&](std::size_t k) {
        p1.push_back(prod.proj1.table[k]);
        p2.push_back(prod.proj2.table[k]);
    });
    return {space, SpaceMap(space, f.dom, std::move(p1)), SpaceMap(space, g.dom, std::move(p2))};
}

/// The mediating map Z → P of a cone (u: Z → dom f, v: Z → dom g) with
/// f∘u = g∘v.
inline SpaceMap pullback_factor(const Pullback& pb, const SpaceMap& u, const SpaceMap& v) {
    if (!same_space(u.dom, v.dom)) throw PreconditionError("pullback_factor: cone legs differ in domain");
    std::vector<std::size_t> t(u.dom->size());
    for (std::size_t z = 0; z < t.size(); ++z) {
        auto k = pb.space->index(pair_id(u.cod->id(u.table[z]), v.cod->id(v.table[z])));
        if (k == npos) throw PreconditionError("pullback_factor: cone does not commute");
        t[z] = k;
    }
    return {u.dom, pb.space, std::move(t)};
}

// --- enumeration ----------------------------------------------------------------

/// Visits every continuous map dom → cod whose value at point i lies in
/// allowed[i] (an empty `allowed` means unrestricted), in lexicographic order
/// of the value table. The visitor may return false to stop early.
template <class Visit>
void for_each_continuous_map(const FiniteSpace& dom, const FiniteSpace& cod,
                             const std::vector<Subset>& allowed, Visit&& visit) {
    const auto n = dom.size();
    std::vector<std::size_t> table(n, npos);
    bool stop = false;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (stop) return;
        if (i == n) {
            if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const std::vector<std::size_t>&>, bool>) {
                if (!visit(std::as_const(table))) stop = true;
            } else {
                visit(std::as_const(table));
            }
            return;
        }
        for (std::size_t v = 0; v < cod.size() && !stop; ++v) {
            if (!allowed.empty() && !allowed[i].test(v)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                if (dom.min_nbhd(i).test(j) && !cod.min_nbhd(v).test(table[j])) ok = false;
                if (dom.min_nbhd(j).test(i) && !cod.min_nbhd(table[j]).test(v)) ok = false;
            }
            if (!ok) continue;
            table[i] = v;
            go(i + 1);
            table[i] = npos;
        }
    };
    go(0);
}

inline std::vector<SpaceMap> continuous_maps(const SpaceRef& dom, const SpaceRef& cod,
                                             const std::vector<Subset>& allowed = {}) {
    std::vector<SpaceMap> out;
    for_each_continuous_map(*dom, *cod, allowed,
                            [&](const std::vector<std::size_t>& t) { out.emplace_back(dom, cod, t); });
    return out;
}

}  // namespace rlsheaf
