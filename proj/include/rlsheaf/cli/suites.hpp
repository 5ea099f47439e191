#pragma once

// The law and adjunction suites run over a workspace. Each entry is one named
// check with a pass flag and a short detail.

#include "rlsheaf/adjunction.hpp"
#include "rlsheaf/cli/workspace.hpp"
#include "rlsheaf/random.hpp"

#include <cmath>

namespace rlsheaf::cli {

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct SuiteResult {
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
    }
    std::size_t failed() const {
        return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.ok; });
    }
};

/// Continuous, open and locally injective exactly when a local homeomorphism,
/// also against the literal definition.
inline bool local_homeo_characterized(const SpaceMap& m) {
    bool lh = is_local_homeomorphism(m);
    bool parts = is_continuous(m) && is_open_map(m) && is_locally_injective(m);
    return lh == parts && lh == is_local_homeomorphism_by_definition(m);
}

/// Sheaf-side laws for one bundle; the étalé-only laws are skipped otherwise.
inline void bundle_laws(SuiteResult& r, const std::string& name, const Bundle& b) {
    r.add("local homeomorphism characterization: " + name, local_homeo_characterized(b.proj));
    bool eq_open = true, eq_clopen = true;
    const bool etale = is_etale(b);
    for (const auto& u : b.base->opens()) {
        auto secs = sections(b, u);
        for (const auto& s : secs)
            for (const auto& t : secs) {
                auto e = equalizer(b, s, t);
                eq_open = eq_open && (!etale || e.open);
                eq_clopen = eq_clopen && (!etale || !b.total->is_discrete() || e.clopen);
            }
    }
    if (!etale) return;
    r.add("equalizers of sections are open: " + name, eq_open);
    r.add("equalizers clopen over a discrete total: " + name, eq_clopen);
    r.add("section images form a basis: " + name, is_basis(*b.total, section_image_basis(b)));
    r.add("topology is final for sections: " + name, final_topology_of_sections(b) == *b.total);
    bool discrete = true;
    for (std::size_t p = 0; p < b.base->size(); ++p) discrete = discrete && stalk(b, b.base->id(p)).is_discrete();
    r.add("stalks discrete: " + name, discrete);
}

inline SuiteResult law_suite(const Workspace& ws, std::uint64_t seed, std::size_t random_maps = 120) {
    SuiteResult r;
    for (const auto& [n, e] : ws.lattices) {
        const auto& l = e.algebra;
        r.add("residuated lattice axioms: " + n, verify_rl(l->tables()).ok());
        auto fl = all_filters(l);
        bool round = true;
        for (const auto& f : fl.filters) round = round && filter_of_congruence(congruence_of_filter(l, f)) == f;
        r.add("filter ↔ congruence round trip: " + n, round, std::to_string(fl.filters.size()) + " filters");
    }
    for (const auto& [n, e] : ws.morphisms) {
        const auto& m = e.morphism;
        r.add("morphism laws: " + n, is_rl_morphism(m.table, *m.dom, *m.cod));
        r.add("injective iff kernel filter is {1}: " + n,
              is_injective(m) == (coker(m) == make_subset(m.dom->size(), {m.dom->top()})));
    }
    for (const auto& [n, e] : ws.maps) r.add("local homeomorphism characterization: " + n, local_homeo_characterized(e.map));
    for (const auto& [n, e] : ws.bundles) {
        bundle_laws(r, n, e.bundle);
        if (e.is_rl()) r.add("stalk residuated lattice: " + n, verify_rl_bundle(e.rl()).ok());
    }
    std::mt19937_64 rng(seed);
    std::size_t agree = 0;
    for (std::size_t k = 0; k < random_maps; ++k) {
        auto a = random_space(rng, 1 + k % 5, "a");
        auto b = random_space(rng, 1 + (k / 5) % 5, "b");
        if (local_homeo_characterized(random_map(rng, a, b))) ++agree;
    }
    r.add("local homeomorphism characterization on random maps", agree == random_maps,
          std::to_string(agree) + "/" + std::to_string(random_maps) + " with seed " + std::to_string(seed));
    return r;
}

/// Exponential, section and projection adjunctions and the triangle
/// identities over the workspace's discrete bases of at most three points,
/// with argument spaces of at most four. Cases whose hom-sets are too large
/// to enumerate quickly are listed as skipped. With `exploratory`, bases
/// need not be discrete.
inline SuiteResult adjunction_suite(const Workspace& ws, bool exploratory = false,
                                    std::vector<std::string>* skipped = nullptr) {
    SuiteResult r;
    const double budget = 1 << 16;
    auto too_big = [&](double count, const std::string& what) {
        if (count <= budget) return false;
        if (skipped) skipped->push_back(what);
        return true;
    };
    std::vector<std::pair<std::string, SpaceRef>> bases, args;
    for (const auto& [n, s] : ws.spaces) {
        if (s->size() <= 3 && (exploratory || s->is_discrete())) bases.emplace_back(n, s);
        if (s->size() <= 4) args.emplace_back(n, s);
    }
    for (const auto& [bn, b] : bases) {
        std::vector<SpaceRef> arg_spaces;
        for (const auto& [xn, x] : args) {
            arg_spaces.push_back(x);
            for (const auto& [tn, t] : args) {
                auto label = bn + " × " + xn + " → " + tn;
                if (too_big(std::pow(double(t->size()), double(b->size() * x->size())), "exponential " + label)) continue;
                auto rep = check_exponential_adjunction(b, x, t);
                r.add("curry/uncurry bijection: " + label, rep.ok(),
                      std::to_string(rep.left) + " = " + std::to_string(rep.right));
            }
        }
        r.add("triangle identities over " + bn, check_triangle_identities(b, arg_spaces).ok());
    }
    for (const auto& [n, e] : ws.bundles) {
        const auto& bb = e.bundle;
        bool base_ok = bb.base->size() <= 3 && (exploratory || bb.base->is_discrete());
        for (const auto& [xn, x] : args) {
            auto label = n + " with " + xn;
            if (base_ok && !too_big(std::pow(double(bb.total->size()), double(bb.base->size() * x->size())),
                                    "section " + label)) {
                auto rep = check_section_adjunction(bb, x);
                r.add("sections adjunction: " + label, rep.ok(), std::to_string(rep.left) + " = " + std::to_string(rep.right));
            }
            if (!too_big(std::pow(double(x->size()), double(bb.total->size())), "projection " + label)) {
                auto rep = check_projection_adjunction(bb, x);
                r.add("projection adjunction: " + label, rep.ok(), std::to_string(rep.left) + " = " + std::to_string(rep.right));
            }
        }
        if (e.is_rl() && base_ok) {
            auto t = sections_as_topological_rl(e.rl());
            r.add("sections form a topological residuated lattice: " + n, check_topological_rl(t).ok());
        }
    }
    for (const auto& [bn, b] : bases)
        for (const auto& [ln, l] : ws.lattices) {
            if (std::pow(double(l.algebra->size()), double(b->size())) > 64) continue;
            TopologicalRL a{l.algebra, share(FiniteSpace::discrete(l.algebra->ids()))};
            auto lifted = lift_compact_open_rl(b, a);
            r.add("compact-open lift is a topological residuated lattice: C(" + bn + ", " + ln + ")",
                  check_topological_rl(lifted).ok() && verify_rl(lifted.algebra->tables()).ok());
        }
    return r;
}

}  // namespace rlsheaf::cli
