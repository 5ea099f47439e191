#pragma once

// Graphviz output for Hasse diagrams of finite lattices, specialization
// orders of finite spaces, and bundles drawn as one cluster per base point.

#include "rlsheaf/bundle.hpp"

#include <functional>
#include <sstream>

namespace rlsheaf::dot {

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

/// Covering pairs x ⋖ y of a partial order given as a dense matrix.
inline std::vector<std::pair<std::size_t, std::size_t>> covers(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& le) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (x == y || !le(x, y) || le(y, x)) continue;
            bool cover = true;
            for (std::size_t z = 0; z < n && cover; ++z)
                if (z != x && z != y && le(x, z) && le(z, y) && !le(z, x) && !le(y, z)) cover = false;
            if (cover) out.emplace_back(x, y);
        }
    return out;
}

inline std::string hasse(const std::string& name, const ResiduatedLattice& l) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (const auto& id : l.ids()) os << "  " << quote(id) << ";\n";
    for (auto [x, y] : covers(l.size(), [&](std::size_t a, std::size_t b) { return l.leq(a, b); }))
        os << "  " << quote(l.id(x)) << " -> " << quote(l.id(y)) << ";\n";
    os << "}\n";
    return os.str();
}

/// Edge p → q when p lies in U_q, drawn up to the covering relation; points
/// with equal neighbourhoods are joined by an undirected edge.
inline std::string specialization(const std::string& name, const FiniteSpace& s) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
    for (const auto& id : s.points()) os << "  " << quote(id) << ";\n";
    auto le = [&](std::size_t p, std::size_t q) { return s.min_nbhd(q).test(p); };
    for (auto [p, q] : covers(s.size(), le)) os << "  " << quote(s.id(p)) << " -> " << quote(s.id(q)) << ";\n";
    for (std::size_t p = 0; p < s.size(); ++p)
        for (std::size_t q = p + 1; q < s.size(); ++q)
            if (le(p, q) && le(q, p))
                os << "  " << quote(s.id(p)) << " -> " << quote(s.id(q)) << " [dir=none, style=dashed];\n";
    os << "}\n";
    return os.str();
}

inline std::string bundle(const std::string& name, const Bundle& b) {
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  compound=true;\n";
    for (std::size_t p = 0; p < b.base->size(); ++p) {
        os << "  subgraph " << quote("cluster_" + b.base->id(p)) << " {\n    label=" << quote(b.base->id(p)) << ";\n";
        for_each_member(b.fibre(p), [&](std::size_t t) { os << "    " << quote(b.total->id(t)) << ";\n"; });
        os << "  }\n";
    }
    auto le = [&](std::size_t p, std::size_t q) { return b.total->min_nbhd(q).test(p); };
    for (auto [p, q] : covers(b.total->size(), le))
        os << "  " << quote(b.total->id(p)) << " -> " << quote(b.total->id(q)) << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace rlsheaf::dot
