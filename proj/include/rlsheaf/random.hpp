#pragma once

// Seeded generators for random finite spaces, maps and bundles.

#include "rlsheaf/bundle.hpp"

#include <cstdlib>
#include <random>

namespace rlsheaf {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// RLSHEAF_SEED when set, the fixed default otherwise.
inline std::uint64_t seed_from_env() {
    if (const char* s = std::getenv("RLSHEAF_SEED")) return std::strtoull(s, nullptr, 10);
    return kDefaultSeed;
}

/// Random topology on n points: U_p from a random relation closed under
/// transitivity.
inline SpaceRef random_space(std::mt19937_64& rng, std::size_t n, const std::string& prefix = "p") {
    std::vector<Id> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
    std::vector<Subset> nb(n, Subset(n));
    std::bernoulli_distribution edge(0.3);
    for (std::size_t i = 0; i < n; ++i) {
        nb[i].set(i);
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && edge(rng)) nb[i].set(j);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (nb[i].test(k)) nb[i] |= nb[k];
    return share(FiniteSpace(std::move(ids), std::move(nb)));
}

/// Any function, continuous or not.
inline SpaceMap random_map(std::mt19937_64& rng, const SpaceRef& dom, const SpaceRef& cod) {
    std::uniform_int_distribution<std::size_t> pick(0, cod->size() - 1);
    std::vector<std::size_t> t(dom->size());
    for (auto& v : t) v = pick(rng);
    return {dom, cod, std::move(t)};
}

/// Random total topology with a random continuous surjective projection;
/// retries until one is found.
inline Bundle random_bundle(std::mt19937_64& rng, std::size_t base_n, std::size_t total_n) {
    if (total_n < base_n) throw PreconditionError("random_bundle: total smaller than base");
    for (;;) {
        auto base = random_space(rng, base_n, "b");
        auto total = random_space(rng, total_n, "t");
        auto m = random_map(rng, total, base);
        if (is_continuous(m) && m.surjective()) return Bundle::create(m);
    }
}

}  // namespace rlsheaf
