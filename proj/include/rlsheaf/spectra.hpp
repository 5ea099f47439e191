#pragma once

// Hull-kernel, dual hull-kernel and patch topologies on a family of prime
// filters.

#include "rlsheaf/fintop.hpp"
#include "rlsheaf/rlcore.hpp"

namespace rlsheaf {

enum class SpectrumFlavor { hull, dual, patch };

inline const char* to_string(SpectrumFlavor f) {
    switch (f) {
        case SpectrumFlavor::hull: return "hull";
        case SpectrumFlavor::dual: return "dual";
        case SpectrumFlavor::patch: return "patch";
    }
    return "?";
}

inline SpectrumFlavor parse_flavor(const std::string& s) {
    if (s == "hull") return SpectrumFlavor::hull;
    if (s == "dual") return SpectrumFlavor::dual;
    if (s == "patch") return SpectrumFlavor::patch;
    throw PreconditionError("unknown spectrum flavor '" + s + "'");
}

enum class PrimeFamily { spec, max, min };

inline PrimeFamily parse_family(const std::string& s) {
    if (s == "spec") return PrimeFamily::spec;
    if (s == "max") return PrimeFamily::max;
    if (s == "min") return PrimeFamily::min;
    throw PreconditionError("unknown prime family '" + s + "'");
}

/// Π together with display names for its members. Points of the spectral
/// space are indexed like `pi`, but the space itself sorts by name.
struct SpectrumConfig {
    LatticeRef parent;
    std::vector<Subset> pi;
    std::vector<Id> names;
    SpectrumFlavor flavor = SpectrumFlavor::hull;

    /// Checks primality of every member; names default to "{a,1}" labels.
    SpectrumConfig(LatticeRef l, std::vector<Subset> family, SpectrumFlavor fl, std::vector<Id> labels = {})
        : parent(std::move(l)), pi(std::move(family)), names(std::move(labels)), flavor(fl) {
        for (const auto& p : pi)
            if (!is_prime_filter(*parent, p))
                throw PreconditionError("spectrum: " + parent->format(p) + " is not a prime filter");
        if (names.empty())
            for (const auto& p : pi) names.push_back(parent->format(p));
        if (names.size() != pi.size()) throw PreconditionError("spectrum: one name per filter required");
    }

    std::size_t size() const noexcept { return pi.size(); }
};

inline std::vector<Subset> prime_family(const FilterLattice& fl, PrimeFamily which) {
    switch (which) {
        case PrimeFamily::spec: return fl.spec();
        case PrimeFamily::max: return fl.max();
        case PrimeFamily::min: return fl.min();
    }
    return {};
}

/// h_Π(X) = {P ∈ Π | X ⊆ P}, indexed like cfg.pi.
inline Subset hull(const SpectrumConfig& cfg, const Subset& x) {
    Subset out(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i)
        if (x.is_subset_of(cfg.pi[i])) out.set(i);
    return out;
}

/// d_Π(X) = Π ∖ h_Π(X).
inline Subset dual_hull(const SpectrumConfig& cfg, const Subset& x) { return ~hull(cfg, x); }

/// k(π) = ⋂π; the empty intersection is the whole carrier.
inline Subset kernel(const SpectrumConfig& cfg, const Subset& selection) {
    Subset out = cfg.parent->whole();
    for_each_member(selection, [&](std::size_t i) { out &= cfg.pi[i]; });
    return out;
}

/// Topology on Π named by cfg.names: hull flavor takes {h(x)} as a closed
/// basis, dual as an open basis, patch is generated by both open families.
inline FiniteSpace spectral_space(const SpectrumConfig& cfg) {
    const auto& l = *cfg.parent;
    std::vector<Subset> subbasis;
    for (Elem x = 0; x < l.size(); ++x) {
        auto h = hull(cfg, make_subset(l.size(), {x}));
        if (cfg.flavor != SpectrumFlavor::dual) subbasis.push_back(~h);
        if (cfg.flavor != SpectrumFlavor::hull) subbasis.push_back(h);
    }
    // Reindex from cfg.pi order to sorted-name order.
    std::vector<std::size_t> order(cfg.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cfg.names[a] < cfg.names[b]; });
    std::vector<Id> sorted;
    for (auto i : order) sorted.push_back(cfg.names[i]);
    std::vector<Subset> moved;
    for (const auto& s : subbasis) {
        Subset t(s.size());
        for (std::size_t k = 0; k < order.size(); ++k)
            if (s.test(order[k])) t.set(k);
        moved.push_back(std::move(t));
    }
    return FiniteSpace::generated(std::move(sorted), moved);
}

/// The opens of a spectral space as lists of names.
inline std::vector<std::vector<Id>> opens_by_name(const FiniteSpace& s) {
    std::vector<std::vector<Id>> out;
    for (const auto& o : s.opens()) {
        std::vector<Id> ids;
        for_each_member(o, [&](std::size_t i) { ids.push_back(s.id(i)); });
        out.push_back(std::move(ids));
    }
    return out;
}

}  // namespace rlsheaf
