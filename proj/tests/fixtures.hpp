#pragma once

// Hand-transcribed algebras and spaces shared by the unit tests. The JSON
// corpus under data/ carries the same objects for the CLI; test_cli checks
// the two agree.

#include "rlsheaf/rlcore.hpp"
#include "rlsheaf/fintop.hpp"
#include "rlsheaf/bundle.hpp"
#include "rlsheaf/random.hpp"


namespace fx {

using namespace rlsheaf;

/// Gödel chain: x ⊙ y = min(x, y).
inline RLSpec chain_spec(const std::vector<Id>& chain) {
    RLSpec s;
    s.carrier = chain;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) s.order.emplace_back(chain[i], chain[i + 1]);
    for (std::size_t i = 0; i < chain.size(); ++i)
        for (std::size_t j = i; j < chain.size(); ++j) s.mul[{chain[i], chain[j]}] = chain[i];
    s.bot = chain.front();
    s.top = chain.back();
    return s;
}

/// Two-element Boolean algebra {0,1}.
inline LatticeRef a2() { return share(ResiduatedLattice::from_spec(chain_spec({"0", "1"}))); }

/// Three-element Gödel chain 0 < a < 1.
inline LatticeRef a3() { return share(ResiduatedLattice::from_spec(chain_spec({"0", "a", "1"}))); }

inline void fill_mul(RLSpec& s, const std::vector<std::tuple<Id, Id, Id>>& rows) {
    for (const auto& [x, y, z] : rows) s.mul[{x, y}] = z;
    for (const auto& x : s.carrier) {
        s.mul[{x, s.top}] = x;
        s.mul[{s.bot, x}] = s.bot;
    }
}

inline RLSpec a4_spec() {
    RLSpec s;
    s.carrier = {"0", "a", "b", "1"};
    s.order = {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
    s.bot = "0";
    s.top = "1";
    fill_mul(s, {{"a", "a", "a"}, {"a", "b", "0"}, {"b", "b", "b"}});
    return s;
}

inline RLSpec a6_spec() {
    RLSpec s;
    s.carrier = {"0", "a", "b", "c", "d", "1"};
    s.order = {{"0", "a"}, {"a", "b"}, {"b", "d"}, {"d", "1"}, {"0", "c"}, {"c", "d"}};
    s.bot = "0";
    s.top = "1";
    fill_mul(s, {{"a", "a", "a"}, {"a", "b", "a"}, {"a", "c", "0"}, {"a", "d", "a"},
                 {"b", "b", "a"}, {"b", "c", "0"}, {"b", "d", "a"},
                 {"c", "c", "c"}, {"c", "d", "c"},
                 {"d", "d", "d"}});
    return s;
}

inline RLSpec a8_spec() {
    RLSpec s;
    s.carrier = {"0", "a", "b", "c", "d", "e", "f", "1"};
    s.order = {{"0", "a"}, {"0", "b"}, {"b", "d"}, {"d", "f"}, {"f", "1"},
               {"a", "d"}, {"a", "c"}, {"c", "e"}, {"d", "e"}, {"e", "1"}};
    s.bot = "0";
    s.top = "1";
    fill_mul(s, {{"a", "a", "a"}, {"a", "b", "0"}, {"a", "c", "a"}, {"a", "d", "a"}, {"a", "e", "a"}, {"a", "f", "a"},
                 {"b", "b", "0"}, {"b", "c", "0"}, {"b", "d", "0"}, {"b", "e", "0"}, {"b", "f", "b"},
                 {"c", "c", "c"}, {"c", "d", "a"}, {"c", "e", "c"}, {"c", "f", "a"},
                 {"d", "d", "a"}, {"d", "e", "a"}, {"d", "f", "d"},
                 {"e", "e", "c"}, {"e", "f", "d"},
                 {"f", "f", "f"}});
    return s;
}

inline LatticeRef a4() { return share(ResiduatedLattice::from_spec(a4_spec())); }
inline LatticeRef a6() { return share(ResiduatedLattice::from_spec(a6_spec())); }
inline LatticeRef a8() { return share(ResiduatedLattice::from_spec(a8_spec())); }

inline SpaceRef point() { return share(FiniteSpace::discrete({"*"})); }
inline SpaceRef discrete(std::vector<Id> ids) { return share(FiniteSpace::discrete(std::move(ids))); }
inline SpaceRef indiscrete(std::vector<Id> ids) { return share(FiniteSpace::indiscrete(std::move(ids))); }
/// Opens ∅, {x}, {x,y}.
inline SpaceRef sierpinski() { return share(FiniteSpace::from_opens({"x", "y"}, {{}, {"x"}, {"x", "y"}})); }

/// Discrete étalé over a discrete base: one algebra per base point, element
/// e of the algebra over the k-th listed point named e + "_" + (k+1).
inline RLBundle discrete_etale(const std::vector<std::pair<Id, LatticeRef>>& stalks) {
    std::vector<Id> base_ids, total_ids;
    std::map<Id, Id> proj;
    std::map<Id, StalkAssignment> assign;
    for (std::size_t k = 0; k < stalks.size(); ++k) {
        const auto& [p, l] = stalks[k];
        base_ids.push_back(p);
        StalkAssignment a{l, {}};
        for (const auto& e : l->ids()) {
            auto t = e + "_" + std::to_string(k + 1);
            total_ids.push_back(t);
            proj[t] = p;
            a.to_total[e] = t;
        }
        assign[p] = a;
    }
    auto base = discrete(base_ids);
    auto total = discrete(total_ids);
    auto b = Bundle::create(SpaceMap::from_ids(total, base, proj));
    auto ops = stalk_ops_from_lattices(b, assign);
    return make_rl_bundle(b, ops);
}

/// A₂ ⊔ A₂ over the two points of Spec_h(𝔄₄).
inline RLBundle etspecha4() { return discrete_etale({{"F2", a2()}, {"F3", a2()}}); }
/// A₂ ⊔ A₃ over Max_d(𝔄₆).
inline RLBundle etmaxda6() { return discrete_etale({{"F2", a2()}, {"F3", a3()}}); }
/// A₃ ⊔ 𝔄₄ over Min_p(𝔄₈).
inline RLBundle etminpa8() { return discrete_etale({{"F3", a3()}, {"F4", a4()}}); }

/// A₂ on an indiscrete two-point total space over a point: an RL-bundle
/// that is not étalé.
inline RLBundle indiscrete_a2() {
    auto total = indiscrete({"0", "1"});
    auto b = Bundle::create(SpaceMap(total, point(), {0, 0}));
    return make_rl_bundle(b, stalk_ops_from_lattices(b, {{"*", {a2(), {{"0", "0"}, {"1", "1"}}}}}));
}

/// Stalk A₂×A₂ over the open point x, A₂ over y, glued along the diagonal:
/// U_{t_y} = {t_y, (t|t)_x}.
inline RLBundle sierpinski_diagonal() {
    auto base = sierpinski();
    std::vector<Id> ids{"(0|0)x", "(0|1)x", "(1|0)x", "(1|1)x", "0y", "1y"};
    std::vector<Subset> nb(6, Subset(6));
    for (std::size_t i = 0; i < 6; ++i) nb[i].set(i);
    nb[4].set(0);
    nb[5].set(3);
    auto total = share(FiniteSpace(ids, nb));
    auto b = Bundle::create(SpaceMap(total, base, {0, 0, 0, 0, 1, 1}));
    auto sq = share(product(*a2(), *a2()));
    std::map<Id, StalkAssignment> as;
    as["x"] = {sq, {{"(0|0)", "(0|0)x"}, {"(0|1)", "(0|1)x"}, {"(1|0)", "(1|0)x"}, {"(1|1)", "(1|1)x"}}};
    as["y"] = {a2(), {{"0", "0y"}, {"1", "1y"}}};
    return make_rl_bundle(b, stalk_ops_from_lattices(b, as));
}

inline std::uint64_t seed() { return seed_from_env(); }

using rlsheaf::random_bundle;
using rlsheaf::random_map;
using rlsheaf::random_space;

}  // namespace fx
