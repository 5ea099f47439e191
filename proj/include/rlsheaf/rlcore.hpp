#pragma once

// Finite residuated lattices (A; ∨, ∧, ⊙, →, 0, 1): tables, axiom checks,
// filters, congruences, quotients and morphisms.

#include "rlsheaf/common.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>

namespace rlsheaf {

using Elem = std::size_t;

/// Candidate operation tables over a carrier of sorted ids. All binary tables
/// are dense row-major: op[x * n + y].
struct RLTables {
    std::vector<Id> carrier;
    std::vector<char> leq;
    std::vector<Elem> join, meet, mul, imp;
    Elem bot = 0;
    Elem top = 0;

    std::size_t size() const noexcept { return carrier.size(); }
    bool le(Elem x, Elem y) const { return leq[x * size() + y] != 0; }
};

/// Reflexive-transitive closure of the given pairs (x ≤ y).
inline std::vector<char> order_closure(std::size_t n, const std::vector<std::pair<Elem, Elem>>& pairs) {
    std::vector<char> leq(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
    for (auto [x, y] : pairs) leq[x * n + y] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k * n + j]) leq[i * n + j] = 1;
    return leq;
}

namespace detail {

inline std::string elem_list(const std::vector<Id>& ids, std::initializer_list<Elem> xs) {
    std::string out = "(";
    bool first = true;
    for (auto x : xs) {
        if (!first) out += ",";
        out += x < ids.size() ? ids[x] : std::string("?");
        first = false;
    }
    return out + ")";
}

/// Least upper bound of {x, y} under `leq`, or npos when it does not exist.
inline Elem lub(const std::vector<char>& leq, std::size_t n, Elem x, Elem y) {
    Elem best = npos;
    for (Elem z = 0; z < n; ++z) {
        if (!leq[x * n + z] || !leq[y * n + z]) continue;
        bool least = true;
        for (Elem w = 0; w < n && least; ++w)
            if (leq[x * n + w] && leq[y * n + w] && !leq[z * n + w]) least = false;
        if (least) best = z;
    }
    return best;
}

inline Elem glb(const std::vector<char>& leq, std::size_t n, Elem x, Elem y) {
    Elem best = npos;
    for (Elem z = 0; z < n; ++z) {
        if (!leq[z * n + x] || !leq[z * n + y]) continue;
        bool greatest = true;
        for (Elem w = 0; w < n && greatest; ++w)
            if (leq[w * n + x] && leq[w * n + y] && !leq[w * n + z]) greatest = false;
        if (greatest) best = z;
    }
    return best;
}

}  // namespace detail

/// Fills join/meet from the order. Throws ValidationError if some pair has no
/// supremum or infimum.
inline void derive_lattice_ops(RLTables& t) {
    const auto n = t.size();
    t.join.assign(n * n, 0);
    t.meet.assign(n * n, 0);
    std::vector<std::string> errors;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            auto j = detail::lub(t.leq, n, x, y);
            auto m = detail::glb(t.leq, n, x, y);
            if (j == npos) errors.push_back("no join for " + detail::elem_list(t.carrier, {x, y}));
            if (m == npos) errors.push_back("no meet for " + detail::elem_list(t.carrier, {x, y}));
            t.join[x * n + y] = j == npos ? 0 : j;
            t.meet[x * n + y] = m == npos ? 0 : m;
        }
    if (!errors.empty()) throw ValidationError("order is not a lattice", errors);
}

/// x → y = ⋁{z | x ⊙ z ≤ y}. Requires leq, join, mul and bot to be filled.
/// Throws NotResiduated, naming a witness triple, when the derived table
/// fails x ⊙ z ≤ y ⇔ z ≤ x → y.
inline std::vector<Elem> derive_residual(const RLTables& t) {
    const auto n = t.size();
    std::vector<Elem> imp(n * n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            Elem acc = t.bot;
            for (Elem z = 0; z < n; ++z)
                if (t.le(t.mul[x * n + z], y)) acc = t.join[acc * n + z];
            imp[x * n + y] = acc;
        }
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (t.le(t.mul[x * n + z], y) != t.le(z, imp[x * n + y]))
                    throw NotResiduated("adjointness fails for (x,y,z)=" +
                                        detail::elem_list(t.carrier, {x, y, z}) + " with derived " +
                                        t.carrier[x] + "→" + t.carrier[y] + "=" +
                                        t.carrier[imp[x * n + y]]);
    return imp;
}

/// Every residuated-lattice axiom, each failure with a witness.
inline Report verify_rl(const RLTables& t) {
    Report r;
    const auto n = t.size();
    const auto& ids = t.carrier;
    auto w = [&](std::initializer_list<Elem> xs) { return detail::elem_list(ids, xs); };
    if (n == 0) {
        r.add("nonempty carrier", "carrier is empty");
        return r;
    }
    if (!std::is_sorted(ids.begin(), ids.end()) || std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        r.add("carrier ids", "carrier must be sorted and unique");
    if (t.leq.size() != n * n || t.join.size() != n * n || t.meet.size() != n * n || t.mul.size() != n * n ||
        t.imp.size() != n * n) {
        r.add("table shape", "every table must have n*n entries");
        return r;
    }
    for (const auto* table : {&t.join, &t.meet, &t.mul, &t.imp})
        for (auto v : *table)
            if (v >= n) {
                r.add("table values", "entry outside carrier");
                return r;
            }
    if (t.bot >= n || t.top >= n) {
        r.add("constants", "0 or 1 outside carrier");
        return r;
    }
    // partial order
    for (Elem x = 0; x < n; ++x) {
        if (!t.le(x, x)) r.add("reflexivity", w({x}));
        if (!t.le(t.bot, x)) r.add("0 is least", w({x}));
        if (!t.le(x, t.top)) r.add("1 is greatest", w({x}));
        for (Elem y = 0; y < n; ++y) {
            if (x != y && t.le(x, y) && t.le(y, x)) r.add("antisymmetry", w({x, y}));
            for (Elem z = 0; z < n; ++z)
                if (t.le(x, y) && t.le(y, z) && !t.le(x, z)) r.add("transitivity", w({x, y, z}));
        }
    }
    // lattice operations are lub/glb
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            if (t.join[x * n + y] != detail::lub(t.leq, n, x, y)) r.add("join is least upper bound", w({x, y}));
            if (t.meet[x * n + y] != detail::glb(t.leq, n, x, y))
                r.add("meet is greatest lower bound", w({x, y}));
        }
    // commutative monoid with unit 1
    for (Elem x = 0; x < n; ++x) {
        if (t.mul[x * n + t.top] != x) r.add("1 is the unit of ⊙", w({x}));
        for (Elem y = 0; y < n; ++y) {
            if (t.mul[x * n + y] != t.mul[y * n + x]) r.add("⊙ commutative", w({x, y}));
            for (Elem z = 0; z < n; ++z)
                if (t.mul[t.mul[x * n + y] * n + z] != t.mul[x * n + t.mul[y * n + z]])
                    r.add("⊙ associative", w({x, y, z}));
        }
    }
    // adjointness
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            for (Elem z = 0; z < n; ++z)
                if (t.le(t.mul[x * n + z], y) != t.le(z, t.imp[x * n + y]))
                    r.add("adjointness x⊙z ≤ y ⇔ z ≤ x→y", w({x, y, z}));
    return r;
}

/// Raw, document-shaped description of a residuated lattice.
struct RLSpec {
    std::vector<Id> carrier;
    std::vector<std::pair<Id, Id>> order;  // x ≤ y pairs (or covering pairs)
    std::map<std::pair<Id, Id>, Id> mul;   // may be upper-triangular
    std::optional<std::map<std::pair<Id, Id>, Id>> imp;
    Id bot;
    Id top;
};

/// Turns a spec into full tables: order closure, lattice operations, the
/// symmetrized ⊙ table and (when absent) the derived residual. Structural
/// problems throw ValidationError; a non-residuated ⊙ throws NotResiduated.
inline RLTables tables_from_spec(const RLSpec& spec) {
    RLTables t;
    t.carrier = spec.carrier;
    std::sort(t.carrier.begin(), t.carrier.end());
    if (std::adjacent_find(t.carrier.begin(), t.carrier.end()) != t.carrier.end())
        throw ValidationError("duplicate carrier ids", {});
    const auto n = t.size();
    std::unordered_map<Id, Elem> idx;
    for (Elem i = 0; i < n; ++i) idx.emplace(t.carrier[i], i);
    std::vector<std::string> errors;
    auto look = [&](const Id& x) -> Elem {
        auto it = idx.find(x);
        if (it == idx.end()) {
            errors.push_back("unknown element '" + x + "'");
            return npos;
        }
        return it->second;
    };
    std::vector<std::pair<Elem, Elem>> pairs;
    for (const auto& [x, y] : spec.order) {
        auto a = look(x), b = look(y);
        if (a != npos && b != npos) pairs.emplace_back(a, b);
    }
    t.bot = look(spec.bot);
    t.top = look(spec.top);
    if (!errors.empty()) throw ValidationError("bad lattice description", errors);
    t.leq = order_closure(n, pairs);
    derive_lattice_ops(t);

    t.mul.assign(n * n, npos);
    for (const auto& [xy, z] : spec.mul) {
        auto a = look(xy.first), b = look(xy.second), c = look(z);
        if (a == npos || b == npos || c == npos) continue;
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
            auto& cell = t.mul[p * n + q];
            if (cell != npos && cell != c)
                errors.push_back("⊙ entry " + detail::elem_list(t.carrier, {p, q}) + " given as both " +
                                 t.carrier[cell] + " and " + t.carrier[c]);
            cell = c;
        }
    }
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (t.mul[x * n + y] == npos)
                errors.push_back("⊙ entry " + detail::elem_list(t.carrier, {x, y}) + " missing");
    if (!errors.empty()) throw ValidationError("bad ⊙ table", errors);

    if (spec.imp) {
        t.imp.assign(n * n, npos);
        for (const auto& [xy, z] : *spec.imp) {
            auto a = look(xy.first), b = look(xy.second), c = look(z);
            if (a != npos && b != npos && c != npos) t.imp[a * n + b] = c;
        }
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y)
                if (t.imp[x * n + y] == npos)
                    errors.push_back("→ entry " + detail::elem_list(t.carrier, {x, y}) + " missing");
        if (!errors.empty()) throw ValidationError("bad → table", errors);
    } else {
        t.imp = derive_residual(t);
    }
    return t;
}

class ResiduatedLattice {
public:
    /// Validates with verify_rl; throws ValidationError with the report.
    static ResiduatedLattice create(RLTables t) {
        verify_rl(t).throw_if_failed("not a residuated lattice");
        return ResiduatedLattice(std::move(t));
    }
    static ResiduatedLattice from_spec(const RLSpec& spec) { return create(tables_from_spec(spec)); }

    std::size_t size() const noexcept { return t_.size(); }
    const std::vector<Id>& ids() const noexcept { return t_.carrier; }
    const Id& id(Elem x) const { return t_.carrier.at(x); }
    Elem index(const Id& x) const {
        auto it = index_.find(x);
        return it == index_.end() ? npos : it->second;
    }
    Elem require(const Id& x) const {
        auto i = index(x);
        if (i == npos) throw PreconditionError("unknown element '" + x + "'");
        return i;
    }
    const RLTables& tables() const noexcept { return t_; }

    bool leq(Elem x, Elem y) const { return t_.le(x, y); }
    Elem join(Elem x, Elem y) const { return t_.join[x * size() + y]; }
    Elem meet(Elem x, Elem y) const { return t_.meet[x * size() + y]; }
    Elem mul(Elem x, Elem y) const { return t_.mul[x * size() + y]; }
    Elem imp(Elem x, Elem y) const { return t_.imp[x * size() + y]; }
    Elem bot() const noexcept { return t_.bot; }
    Elem top() const noexcept { return t_.top; }
    bool degenerate() const noexcept { return t_.bot == t_.top; }

    /// ¬a = a → 0.
    Elem neg(Elem a) const { return imp(a, bot()); }
    /// a⁰ = 1, aⁿ = a ⊙ aⁿ⁻¹.
    Elem power(Elem a, unsigned n) const {
        Elem acc = top();
        for (unsigned i = 0; i < n; ++i) acc = mul(a, acc);
        return acc;
    }

    Subset subset(const std::vector<Id>& xs) const {
        Subset s(size());
        for (const auto& x : xs) s.set(require(x));
        return s;
    }
    Subset whole() const { return full_subset(size()); }
    std::string format(const Subset& s) const { return format_subset(s, t_.carrier); }

    friend bool operator==(const ResiduatedLattice& a, const ResiduatedLattice& b) {
        const auto& x = a.t_;
        const auto& y = b.t_;
        return x.carrier == y.carrier && x.leq == y.leq && x.join == y.join && x.meet == y.meet &&
               x.mul == y.mul && x.imp == y.imp && x.bot == y.bot && x.top == y.top;
    }

private:
    explicit ResiduatedLattice(RLTables t) : t_(std::move(t)) {
        for (Elem i = 0; i < t_.size(); ++i) index_.emplace(t_.carrier[i], i);
    }

    RLTables t_;
    std::unordered_map<Id, Elem> index_;
};

using LatticeRef = std::shared_ptr<const ResiduatedLattice>;

inline LatticeRef share(ResiduatedLattice l) { return std::make_shared<const ResiduatedLattice>(std::move(l)); }

inline Elem negation(const ResiduatedLattice& l, Elem a) { return l.neg(a); }
inline Elem power(const ResiduatedLattice& l, Elem a, unsigned n) { return l.power(a, n); }

/// Product algebra on pair ids "(x|y)" with componentwise operations.
inline ResiduatedLattice product(const ResiduatedLattice& a, const ResiduatedLattice& b) {
    struct Entry {
        Id id;
        Elem x, y;
    };
    std::vector<Entry> es;
    for (Elem x = 0; x < a.size(); ++x)
        for (Elem y = 0; y < b.size(); ++y) es.push_back({pair_id(a.id(x), b.id(y)), x, y});
    std::sort(es.begin(), es.end(), [](const Entry& p, const Entry& q) { return p.id < q.id; });
    const auto n = es.size();
    std::vector<Elem> where(n);
    for (Elem k = 0; k < n; ++k) where[es[k].x * b.size() + es[k].y] = k;
    auto at = [&](Elem x, Elem y) { return where[x * b.size() + y]; };
    RLTables t;
    for (const auto& e : es) t.carrier.push_back(e.id);
    t.leq.assign(n * n, 0);
    t.join.assign(n * n, 0);
    t.meet = t.mul = t.imp = t.join;
    for (Elem i = 0; i < n; ++i)
        for (Elem j = 0; j < n; ++j) {
            const auto &p = es[i], &q = es[j];
            t.leq[i * n + j] = a.leq(p.x, q.x) && b.leq(p.y, q.y);
            t.join[i * n + j] = at(a.join(p.x, q.x), b.join(p.y, q.y));
            t.meet[i * n + j] = at(a.meet(p.x, q.x), b.meet(p.y, q.y));
            t.mul[i * n + j] = at(a.mul(p.x, q.x), b.mul(p.y, q.y));
            t.imp[i * n + j] = at(a.imp(p.x, q.x), b.imp(p.y, q.y));
        }
    t.bot = at(a.bot(), b.bot());
    t.top = at(a.top(), b.top());
    return ResiduatedLattice::create(std::move(t));
}

// --- filters ---------------------------------------------------------------------

/// Nonempty, ⊙-closed, and x ∨ y ∈ F for x ∈ F and any y.
inline bool is_filter(const ResiduatedLattice& l, const Subset& s) {
    if (s.none()) return false;
    bool ok = true;
    for_each_member(s, [&](Elem x) {
        for (Elem y = 0; y < l.size() && ok; ++y) {
            if (!s.test(l.join(x, y))) ok = false;
            if (s.test(y) && !s.test(l.mul(x, y))) ok = false;
        }
    });
    return ok;
}

/// Least filter containing X, by closure iteration from X ∪ {1}.
inline Subset generated_filter(const ResiduatedLattice& l, const Subset& x) {
    Subset s = x;
    s.set(l.top());
    bool changed = true;
    while (changed) {
        changed = false;
        Subset next = s;
        for_each_member(s, [&](Elem a) {
            for (Elem b = 0; b < l.size(); ++b) {
                next.set(l.join(a, b));
                if (s.test(b)) next.set(l.mul(a, b));
            }
        });
        if (next != s) {
            s = std::move(next);
            changed = true;
        }
    }
    return s;
}

inline Subset principal_filter(const ResiduatedLattice& l, Elem x) {
    return generated_filter(l, make_subset(l.size(), {x}));
}

/// ⋁𝓕 = 𝓕(∪𝓕); the empty join is {1}.
inline Subset filter_join(const ResiduatedLattice& l, const std::vector<Subset>& family) {
    Subset u(l.size());
    for (const auto& f : family) u |= f;
    return generated_filter(l, u);
}

inline Subset filter_meet(const ResiduatedLattice& l, const std::vector<Subset>& family) {
    Subset m = l.whole();
    for (const auto& f : family) m &= f;
    return m;
}

inline bool is_prime_filter(const ResiduatedLattice& l, const Subset& f) {
    if (!is_filter(l, f) || f.test(l.bot())) return false;
    for (Elem x = 0; x < l.size(); ++x)
        for (Elem y = 0; y < l.size(); ++y)
            if (f.test(l.join(x, y)) && !f.test(x) && !f.test(y)) return false;
    return true;
}

struct FilterFlags {
    bool proper = false;
    bool principal = false;
    bool maximal = false;
    bool prime = false;
    bool minimal_prime = false;
};

struct FilterLattice {
    LatticeRef parent;
    std::vector<Subset> filters;  // by cardinality, then lexicographically
    std::vector<FilterFlags> flags;

    std::size_t find(const Subset& f) const {
        auto it = std::find(filters.begin(), filters.end(), f);
        return it == filters.end() ? npos : static_cast<std::size_t>(it - filters.begin());
    }
    std::vector<Subset> where(bool FilterFlags::*flag) const {
        std::vector<Subset> out;
        for (std::size_t i = 0; i < filters.size(); ++i)
            if (flags[i].*flag) out.push_back(filters[i]);
        return out;
    }
    std::vector<Subset> proper() const { return where(&FilterFlags::proper); }
    std::vector<Subset> spec() const { return where(&FilterFlags::prime); }
    std::vector<Subset> max() const { return where(&FilterFlags::maximal); }
    std::vector<Subset> min() const { return where(&FilterFlags::minimal_prime); }
};

inline void sort_subsets(std::vector<Subset>& v) {
    std::sort(v.begin(), v.end(), [](const Subset& a, const Subset& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return members(a) < members(b);
    });
}

/// Flags for each filter of the family (which must be all filters of l for
/// maximality and minimality to mean anything).
inline std::vector<FilterFlags> classify_filters(const ResiduatedLattice& l, const std::vector<Subset>& filters) {
    std::vector<FilterFlags> out(filters.size());
    for (std::size_t i = 0; i < filters.size(); ++i) {
        const auto& f = filters[i];
        out[i].proper = !f.test(l.bot());
        out[i].prime = is_prime_filter(l, f);
        for (Elem x = 0; x < l.size() && !out[i].principal; ++x)
            if (principal_filter(l, x) == f) out[i].principal = true;
    }
    for (std::size_t i = 0; i < filters.size(); ++i) {
        if (out[i].proper) {
            bool maximal = true;
            for (std::size_t j = 0; j < filters.size(); ++j)
                if (j != i && out[j].proper && filters[i].is_proper_subset_of(filters[j])) maximal = false;
            out[i].maximal = maximal;
        }
        if (out[i].prime) {
            bool minimal = true;
            for (std::size_t j = 0; j < filters.size(); ++j)
                if (j != i && out[j].prime && filters[j].is_proper_subset_of(filters[i])) minimal = false;
            out[i].minimal_prime = minimal;
        }
    }
    return out;
}

/// Antichains of the order, each as a subset (including the empty antichain).
inline std::vector<Subset> antichains(const ResiduatedLattice& l) {
    std::vector<Subset> out;
    Subset cur(l.size());
    std::function<void(Elem)> go = [&](Elem next) {
        out.push_back(cur);
        for (Elem x = next; x < l.size(); ++x) {
            bool comparable = false;
            for_each_member(cur, [&](Elem y) {
                if (l.leq(x, y) || l.leq(y, x)) comparable = true;
            });
            if (comparable) continue;
            cur.set(x);
            go(x + 1);
            cur.reset(x);
        }
    };
    go(0);
    return out;
}

/// All filters, as the generated filters of the antichains of the order.
inline FilterLattice all_filters(const LatticeRef& l) {
    std::set<Subset> found;
    for (const auto& a : antichains(*l)) found.insert(generated_filter(*l, a));
    FilterLattice fl{l, std::vector<Subset>(found.begin(), found.end()), {}};
    sort_subsets(fl.filters);
    fl.flags = classify_filters(*l, fl.filters);
    return fl;
}

// --- congruences and quotients ---------------------------------------------------

struct Congruence {
    LatticeRef parent;
    std::vector<std::size_t> block_of;  // element -> block index
    std::vector<Subset> blocks;         // ordered by least member

    bool related(Elem x, Elem y) const { return block_of[x] == block_of[y]; }
};

/// Blocks of an equivalence given as a predicate; throws InvariantViolation
/// if the predicate is not an equivalence.
template <class Rel>
Congruence partition_by(const LatticeRef& l, Rel&& rel) {
    const auto n = l->size();
    Congruence c{l, std::vector<std::size_t>(n, npos), {}};
    for (Elem x = 0; x < n; ++x) {
        if (c.block_of[x] != npos) continue;
        Subset b(n);
        for (Elem y = 0; y < n; ++y)
            if (rel(x, y)) b.set(y);
        for_each_member(b, [&](Elem y) {
            if (c.block_of[y] != npos) throw InvariantViolation("relation is not an equivalence");
            c.block_of[y] = c.blocks.size();
        });
        if (!b.test(x)) throw InvariantViolation("relation is not reflexive");
        c.blocks.push_back(std::move(b));
    }
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            if (rel(x, y) != c.related(x, y)) throw InvariantViolation("relation is not an equivalence");
    return c;
}

/// Compatibility of a partition with ∨, ∧, ⊙, →.
inline Report check_congruence(const ResiduatedLattice& l, const std::vector<std::size_t>& block_of) {
    Report r;
    const auto n = l.size();
    using Op = Elem (ResiduatedLattice::*)(Elem, Elem) const;
    const std::pair<const char*, Op> ops[] = {{"∨", &ResiduatedLattice::join},
                                              {"∧", &ResiduatedLattice::meet},
                                              {"⊙", &ResiduatedLattice::mul},
                                              {"→", &ResiduatedLattice::imp}};
    for (auto [name, op] : ops)
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                if (block_of[a] != block_of[b]) continue;
                for (Elem c = 0; c < n; ++c) {
                    if ((block_of[(l.*op)(a, c)] != block_of[(l.*op)(b, c)]) ||
                        (block_of[(l.*op)(c, a)] != block_of[(l.*op)(c, b)])) {
                        r.add(std::string("compatible with ") + name,
                              detail::elem_list(l.ids(), {a, b, c}));
                        goto next_op;
                    }
                }
            }
    next_op:;
    return r;
}

/// x ≡_F y iff x → y ∈ F and y → x ∈ F; checked to be a congruence.
inline Congruence congruence_of_filter(const LatticeRef& l, const Subset& f) {
    if (!is_filter(*l, f)) throw PreconditionError("congruence_of_filter: not a filter");
    auto c = partition_by(l, [&](Elem x, Elem y) { return f.test(l->imp(x, y)) && f.test(l->imp(y, x)); });
    check_congruence(*l, c.block_of).throw_if_failed("≡_F is not a congruence");
    return c;
}

/// The class of 1.
inline Subset filter_of_congruence(const Congruence& c) { return c.blocks[c.block_of[c.parent->top()]]; }

struct RLMorphism {
    LatticeRef dom;
    LatticeRef cod;
    std::vector<Elem> table;

    Elem operator()(Elem x) const { return table.at(x); }
};

/// Preservation of ∨, ∧, ⊙, →, 0, 1 with the first failing witness.
inline Report check_rl_morphism(const std::vector<Elem>& table, const ResiduatedLattice& dom,
                                const ResiduatedLattice& cod) {
    Report r;
    if (table.size() != dom.size()) {
        r.add("total map", "table size differs from domain size");
        return r;
    }
    for (auto v : table)
        if (v >= cod.size()) {
            r.add("total map", "value outside codomain");
            return r;
        }
    if (table[dom.bot()] != cod.bot()) r.add("preserves 0", dom.id(dom.bot()));
    if (table[dom.top()] != cod.top()) r.add("preserves 1", dom.id(dom.top()));
    using Op = Elem (ResiduatedLattice::*)(Elem, Elem) const;
    const std::pair<const char*, Op> ops[] = {{"∨", &ResiduatedLattice::join},
                                              {"∧", &ResiduatedLattice::meet},
                                              {"⊙", &ResiduatedLattice::mul},
                                              {"→", &ResiduatedLattice::imp}};
    for (auto [name, op] : ops) {
        bool done = false;
        for (Elem x = 0; x < dom.size() && !done; ++x)
            for (Elem y = 0; y < dom.size() && !done; ++y)
                if (table[(dom.*op)(x, y)] != (cod.*op)(table[x], table[y])) {
                    r.add(std::string("preserves ") + name, detail::elem_list(dom.ids(), {x, y}));
                    done = true;
                }
    }
    return r;
}

inline bool is_rl_morphism(const std::vector<Elem>& table, const ResiduatedLattice& dom,
                           const ResiduatedLattice& cod) {
    return check_rl_morphism(table, dom, cod).ok();
}

inline RLMorphism make_rl_morphism(LatticeRef dom, LatticeRef cod, std::vector<Elem> table) {
    check_rl_morphism(table, *dom, *cod).throw_if_failed("not a morphism of residuated lattices");
    return {std::move(dom), std::move(cod), std::move(table)};
}

inline RLMorphism make_rl_morphism(LatticeRef dom, LatticeRef cod, const std::map<Id, Id>& assoc) {
    std::vector<Elem> t(dom->size(), npos);
    for (const auto& [x, y] : assoc) t[dom->require(x)] = cod->require(y);
    for (Elem i = 0; i < t.size(); ++i)
        if (t[i] == npos) throw PreconditionError("morphism: no image for '" + dom->id(i) + "'");
    return make_rl_morphism(std::move(dom), std::move(cod), std::move(t));
}

/// coker(f) = f⁻¹(1).
inline Subset coker(const RLMorphism& m) {
    Subset s(m.dom->size());
    for (Elem x = 0; x < m.table.size(); ++x)
        if (m.table[x] == m.cod->top()) s.set(x);
    return s;
}

inline bool is_injective(const RLMorphism& m) {
    std::set<Elem> seen(m.table.begin(), m.table.end());
    return seen.size() == m.table.size();
}

inline RLMorphism identity_morphism(const LatticeRef& l) {
    std::vector<Elem> t(l->size());
    for (Elem i = 0; i < t.size(); ++i) t[i] = i;
    return {l, l, std::move(t)};
}

/// g ∘ f.
inline RLMorphism compose(const RLMorphism& g, const RLMorphism& f) {
    if (!(*f.cod == *g.dom)) throw PreconditionError("compose: codomain/domain mismatch");
    std::vector<Elem> t(f.table.size());
    for (Elem i = 0; i < t.size(); ++i) t[i] = g.table[f.table[i]];
    return {f.dom, g.cod, std::move(t)};
}

inline bool operator==(const RLMorphism& a, const RLMorphism& b) {
    return *a.dom == *b.dom && *a.cod == *b.cod && a.table == b.table;
}

struct Quotient {
    LatticeRef algebra;
    RLMorphism projection;
    Congruence congruence;
};

/// Block id "[x,y,...]" listing the members of the class.
inline Id block_id(const ResiduatedLattice& l, const Subset& block) {
    auto s = l.format(block);
    return "[" + s.substr(1, s.size() - 2) + "]";
}

/// A/F with blockwise operations; the projection is checked to be a
/// surjective morphism whose cokernel is F.
inline Quotient quotient(const LatticeRef& l, const Subset& f) {
    Congruence c = congruence_of_filter(l, f);
    const auto k = c.blocks.size();
    std::vector<std::pair<Id, std::size_t>> named;
    for (std::size_t b = 0; b < k; ++b) named.emplace_back(block_id(*l, c.blocks[b]), b);
    std::sort(named.begin(), named.end());
    std::vector<std::size_t> pos(k);
    RLTables t;
    for (std::size_t i = 0; i < k; ++i) {
        t.carrier.push_back(named[i].first);
        pos[named[i].second] = i;
    }
    std::vector<Elem> rep(k);
    for (std::size_t b = 0; b < k; ++b) rep[pos[b]] = c.blocks[b].find_first();
    auto cls = [&](Elem x) { return pos[c.block_of[x]]; };
    t.leq.assign(k * k, 0);
    t.join.assign(k * k, 0);
    t.meet = t.mul = t.imp = t.join;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            auto x = rep[i], y = rep[j];
            t.join[i * k + j] = cls(l->join(x, y));
            t.meet[i * k + j] = cls(l->meet(x, y));
            t.mul[i * k + j] = cls(l->mul(x, y));
            t.imp[i * k + j] = cls(l->imp(x, y));
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t.leq[i * k + j] = t.join[i * k + j] == j;
    t.bot = cls(l->bot());
    t.top = cls(l->top());
    auto q = share(ResiduatedLattice::create(std::move(t)));
    std::vector<Elem> proj(l->size());
    for (Elem x = 0; x < l->size(); ++x) proj[x] = cls(x);
    auto m = make_rl_morphism(l, q, std::move(proj));
    if (coker(m) != f) throw InvariantViolation("quotient: projection cokernel differs from F");
    return {q, std::move(m), std::move(c)};
}

}  // namespace rlsheaf
