#pragma once

// JSON workspace documents: named lattices, spaces, maps, bundles (optionally
// carrying stalk operations), lattice morphisms, RLE-spaces and their inverse
// morphisms, plus recorded expectations. Parsing reports diagnostics with
// document paths; serialization writes a canonical form that reparses to an
// equal workspace.

#include "rlsheaf/basechange.hpp"
#include "rlsheaf/spectra.hpp"

#include <nlohmann/json.hpp>

namespace rlsheaf::cli {

using json = nlohmann::json;

struct Diagnostic {
    std::string path;
    std::string message;

    std::string line() const { return path + ": " + message; }
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Malformed input or a dangling reference; exit code 2.
class InputError : public Error {
public:
    InputError(std::string kind, Diagnostic d)
        : Error(kind + " error at " + d.line()), kind_(std::move(kind)), diag_(std::move(d)) {}
    const std::string& kind() const noexcept { return kind_; }
    const Diagnostic& diagnostic() const noexcept { return diag_; }

private:
    std::string kind_;
    Diagnostic diag_;
};

/// Objects that failed their validators in strict mode; exit code 1.
class StrictFailure : public Error {
public:
    explicit StrictFailure(std::vector<Diagnostic> ds)
        : Error("validation failed: " + ds.front().line()), diags_(std::move(ds)) {}
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

struct LatticeEntry {
    LatticeRef algebra;
};

struct MapEntry {
    std::string dom, cod;
    SpaceMap map;
};

struct BundleEntry {
    std::string total, base;
    Bundle bundle;
    std::optional<StalkOps> ops;

    bool is_rl() const { return ops.has_value(); }
    RLBundle rl() const { return {bundle, *ops}; }
};

struct MorphismEntry {
    std::string dom, cod;
    RLMorphism morphism;
};

struct RLESpaceEntry {
    std::string bundle;
    RLESpace space;
};

struct RLEMorphismEntry {
    std::string src, dst, base_map;
    RLEInvMorphism morphism;
};

struct Workspace {
    std::map<std::string, LatticeEntry> lattices;
    std::map<std::string, SpaceRef> spaces;
    std::map<std::string, MapEntry> maps;
    std::map<std::string, BundleEntry> bundles;
    std::map<std::string, MorphismEntry> morphisms;
    std::map<std::string, RLESpaceEntry> rle_spaces;
    std::map<std::string, RLEMorphismEntry> rle_morphisms;
    json expectations = json::object();
    std::vector<Diagnostic> diagnostics;  // lenient mode only

    std::vector<std::string> rl_bundles() const {
        std::vector<std::string> out;
        for (const auto& [name, e] : bundles)
            if (e.is_rl()) out.push_back(name);
        return out;
    }
};

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

[[noreturn]] inline void syntax(const std::string& path, const std::string& msg) {
    throw InputError("syntax", {path.empty() ? "/" : path, msg});
}
[[noreturn]] inline void reference(const std::string& path, const std::string& msg) {
    throw InputError("reference", {path.empty() ? "/" : path, msg});
}

inline const json& object_at(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) syntax(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || k == a;
        if (!known) syntax(child(path, k), "unknown key");
    }
    return j;
}

inline const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) syntax(path, std::string("missing key '") + key + "'");
    return j.at(key);
}

inline std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) syntax(path, "expected a string");
    return j.get<std::string>();
}

inline std::vector<std::string> str_list(const json& j, const std::string& path) {
    if (!j.is_array()) syntax(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "/" + std::to_string(i)));
    return out;
}

inline std::map<std::string, std::string> str_map(const json& j, const std::string& path) {
    if (!j.is_object()) syntax(path, "expected an object of strings");
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : j.items()) out.emplace(k, str(v, child(path, k)));
    return out;
}

inline std::pair<std::string, std::string> split_pair(const std::string& key, const std::string& path) {
    auto comma = key.find(',');
    if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos)
        syntax(path, "expected a key of the form \"x,y\"");
    return {key.substr(0, comma), key.substr(comma + 1)};
}

inline std::map<std::pair<Id, Id>, Id> pair_table(const json& j, const std::string& path) {
    std::map<std::pair<Id, Id>, Id> out;
    for (const auto& [k, v] : str_map(j, path)) out.emplace(split_pair(k, child(path, k)), v);
    return out;
}

inline std::vector<std::pair<Id, Id>> pair_list(const json& j, const std::string& path) {
    if (!j.is_array()) syntax(path, "expected an array of pairs");
    std::vector<std::pair<Id, Id>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto p = str_list(j[i], path + "/" + std::to_string(i));
        if (p.size() != 2) syntax(path + "/" + std::to_string(i), "expected a pair");
        out.emplace_back(p[0], p[1]);
    }
    return out;
}

template <class Registry>
const auto& lookup(const Registry& r, const json& ref, const std::string& path, const char* kind) {
    auto name = str(ref, path);
    auto it = r.find(name);
    if (it == r.end()) reference(path, std::string("unknown ") + kind + " '" + name + "'");
    return *it;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

/// Runs a constructor; a library Error becomes a validation diagnostic.
template <class F>
bool validated(std::vector<Diagnostic>& out, const std::string& path, F&& build) {
    try {
        build();
        return true;
    } catch (const InputError&) {
        throw;
    } catch (const ValidationError& e) {
        out.push_back({path, std::string(e.what()) + (e.details().empty() ? "" : ": " + join(e.details()))});
    } catch (const Error& e) {
        out.push_back({path, e.what()});
    }
    return false;
}

inline RLSpec lattice_spec(const json& j, const std::string& path) {
    object_at(j, path, {"carrier", "leq", "hasse", "mul", "imp", "bot", "top"});
    if (j.contains("leq") && j.contains("hasse")) syntax(path, "give either 'leq' or 'hasse', not both");
    RLSpec s;
    s.carrier = str_list(field(j, path, "carrier"), child(path, "carrier"));
    const char* order = j.contains("hasse") ? "hasse" : "leq";
    if (j.contains(order)) s.order = pair_list(j.at(order), child(path, order));
    s.mul = pair_table(field(j, path, "mul"), child(path, "mul"));
    if (j.contains("imp")) s.imp = pair_table(j.at("imp"), child(path, "imp"));
    s.bot = str(field(j, path, "bot"), child(path, "bot"));
    s.top = str(field(j, path, "top"), child(path, "top"));
    return s;
}

inline StalkOps stalk_ops_from_json(const json& j, const Bundle& b, const std::string& path) {
    object_at(j, path, {"stalks", "stalk_ops", "zero", "one", "total", "base", "proj"});
    StalkOps ops;
    ops.n = b.total->size();
    const auto& so = object_at(j.at("stalk_ops"), child(path, "stalk_ops"), {"join", "meet", "mul", "imp"});
    for (auto op : kStalkOps) {
        auto p = child(child(path, "stalk_ops"), op_key(op));
        auto& t = ops.table[static_cast<int>(op)];
        t.assign(ops.n * ops.n, npos);
        for (const auto& [xy, z] : pair_table(field(so, child(path, "stalk_ops"), op_key(op)), p)) {
            auto s = b.total->index(xy.first), u = b.total->index(xy.second), v = b.total->index(z);
            if (s == npos || u == npos || v == npos) reference(p, "unknown total point in '" + xy.first + "," + xy.second + "'");
            t[s * ops.n + u] = v;
        }
    }
    for (const char* which : {"zero", "one"}) {
        auto& dst = std::string(which) == "zero" ? ops.zero : ops.one;
        dst.assign(b.base->size(), npos);
        for (const auto& [p, t] : str_map(field(j, path, which), child(path, which))) {
            auto bi = b.base->index(p), ti = b.total->index(t);
            if (bi == npos || ti == npos) reference(child(child(path, which), p), "unknown point");
            dst[bi] = ti;
        }
    }
    return ops;
}

}  // namespace detail

/// Strict mode throws StrictFailure on the first batch of validation
/// diagnostics; lenient mode records them and drops the offending objects
/// (and anything referring to them, with a further diagnostic).
inline Workspace parse_workspace(const json& doc, bool strict = true) {
    using namespace detail;
    Workspace ws;
    if (doc.is_null()) return ws;
    object_at(doc, "", {"lattices", "spaces", "maps", "bundles", "morphisms", "rle_spaces", "rle_morphisms",
                        "expectations"});
    std::vector<Diagnostic> bad;
    std::set<std::string> dropped;  // "kind/name" of objects that failed
    auto section = [&](const char* key) -> const json& {
        static const json empty = json::object();
        if (!doc.contains(key)) return empty;
        if (!doc.at(key).is_object()) syntax(child("", key), "expected an object of named entries");
        return doc.at(key);
    };
    // a reference to something that was dropped in lenient mode
    auto was_dropped = [&](const char* kind, const json& ref, const std::string& path) {
        if (ref.is_string() && dropped.count(std::string(kind) + "/" + ref.get<std::string>())) {
            bad.push_back({path, std::string("refers to invalid ") + kind + " '" + ref.get<std::string>() + "'"});
            return true;
        }
        return false;
    };

    for (const auto& [name, j] : section("lattices").items()) {
        auto path = "/lattices/" + name;
        auto spec = lattice_spec(j, path);
        if (!validated(bad, path, [&] { ws.lattices[name] = {share(ResiduatedLattice::from_spec(spec))}; }))
            dropped.insert("lattice/" + name);
    }
    for (const auto& [name, j] : section("spaces").items()) {
        auto path = "/spaces/" + name;
        object_at(j, path, {"points", "opens"});
        auto pts = str_list(field(j, path, "points"), child(path, "points"));
        const auto& oj = field(j, path, "opens");
        if (!oj.is_array()) syntax(child(path, "opens"), "expected an array of point lists");
        std::vector<std::vector<Id>> opens;
        for (std::size_t i = 0; i < oj.size(); ++i) opens.push_back(str_list(oj[i], child(path, "opens") + "/" + std::to_string(i)));
        if (!validated(bad, path, [&] { ws.spaces[name] = share(FiniteSpace::from_opens(pts, opens)); }))
            dropped.insert("space/" + name);
    }
    auto space_ref = [&](const json& j, const std::string& path, const char* key) -> const std::pair<const std::string, SpaceRef>* {
        const auto& ref = field(j, path, key);
        if (was_dropped("space", ref, child(path, key))) return nullptr;
        return &lookup(ws.spaces, ref, child(path, key), "space");
    };
    for (const auto& [name, j] : section("maps").items()) {
        auto path = "/maps/" + name;
        object_at(j, path, {"dom", "cod", "table"});
        auto dom = space_ref(j, path, "dom");
        auto cod = space_ref(j, path, "cod");
        auto table = str_map(field(j, path, "table"), child(path, "table"));
        if (!dom || !cod) {
            dropped.insert("map/" + name);
            continue;
        }
        if (!validated(bad, path, [&] {
                auto m = SpaceMap::from_ids(dom->second, cod->second, table);
                if (!is_continuous(m)) throw ValidationError("map is not continuous", {});
                ws.maps.emplace(name, MapEntry{dom->first, cod->first, std::move(m)});
            }))
            dropped.insert("map/" + name);
    }
    for (const auto& [name, j] : section("bundles").items()) {
        auto path = "/bundles/" + name;
        object_at(j, path, {"total", "base", "proj", "stalks", "stalk_ops", "zero", "one"});
        if (j.contains("stalks") && j.contains("stalk_ops")) syntax(path, "give either 'stalks' or 'stalk_ops', not both");
        if (j.contains("stalk_ops") != (j.contains("zero") && j.contains("one")))
            syntax(path, "'stalk_ops' needs 'zero' and 'one' and nothing else does");
        auto total = space_ref(j, path, "total");
        auto base = space_ref(j, path, "base");
        auto proj = str_map(field(j, path, "proj"), child(path, "proj"));
        std::map<Id, StalkAssignment> stalks;
        if (j.contains("stalks")) {
            auto sp = child(path, "stalks");
            if (!j.at("stalks").is_object()) syntax(sp, "expected an object keyed by base point");
            for (const auto& [p, sj] : j.at("stalks").items()) {
                auto pp = child(sp, p);
                object_at(sj, pp, {"lattice", "map"});
                const auto& lref = field(sj, pp, "lattice");
                if (was_dropped("lattice", lref, child(pp, "lattice"))) {
                    total = nullptr;
                    continue;
                }
                stalks[p] = {lookup(ws.lattices, lref, child(pp, "lattice"), "lattice").second.algebra,
                             str_map(field(sj, pp, "map"), child(pp, "map"))};
            }
        }
        if (!total || !base) {
            dropped.insert("bundle/" + name);
            continue;
        }
        if (!validated(bad, path, [&] {
                BundleEntry e{total->first, base->first,
                              Bundle::create(SpaceMap::from_ids(total->second, base->second, proj)), std::nullopt};
                if (j.contains("stalks")) e.ops = stalk_ops_from_lattices(e.bundle, stalks);
                if (j.contains("stalk_ops")) e.ops = stalk_ops_from_json(j, e.bundle, path);
                if (e.ops) verify_rl_bundle(e.rl()).throw_if_failed("not a residuated-lattice bundle");
                ws.bundles.emplace(name, std::move(e));
            }))
            dropped.insert("bundle/" + name);
    }
    for (const auto& [name, j] : section("morphisms").items()) {
        auto path = "/morphisms/" + name;
        object_at(j, path, {"dom", "cod", "map"});
        if (was_dropped("lattice", field(j, path, "dom"), child(path, "dom")) ||
            was_dropped("lattice", field(j, path, "cod"), child(path, "cod"))) {
            dropped.insert("morphism/" + name);
            continue;
        }
        const auto& dom = lookup(ws.lattices, j.at("dom"), child(path, "dom"), "lattice");
        const auto& cod = lookup(ws.lattices, j.at("cod"), child(path, "cod"), "lattice");
        auto table = str_map(field(j, path, "map"), child(path, "map"));
        if (!validated(bad, path, [&] {
                ws.morphisms.emplace(name, MorphismEntry{dom.first, cod.first,
                                                         make_rl_morphism(dom.second.algebra, cod.second.algebra, table)});
            }))
            dropped.insert("morphism/" + name);
    }
    for (const auto& [name, j] : section("rle_spaces").items()) {
        auto path = "/rle_spaces/" + name;
        object_at(j, path, {"bundle"});
        if (was_dropped("bundle", field(j, path, "bundle"), child(path, "bundle"))) {
            dropped.insert("rle_space/" + name);
            continue;
        }
        const auto& b = lookup(ws.bundles, j.at("bundle"), child(path, "bundle"), "bundle");
        if (!validated(bad, path, [&] {
                if (!b.second.is_rl()) throw PreconditionError("bundle '" + b.first + "' carries no stalk operations");
                ws.rle_spaces.emplace(name, RLESpaceEntry{b.first, RLESpace::create(b.second.rl())});
            }))
            dropped.insert("rle_space/" + name);
    }
    for (const auto& [name, j] : section("rle_morphisms").items()) {
        auto path = "/rle_morphisms/" + name;
        object_at(j, path, {"src", "dst", "base_map", "alpha"});
        bool skip = false;
        for (auto [key, kind] : {std::pair{"src", "rle_space"}, {"dst", "rle_space"}, {"base_map", "map"}})
            skip = was_dropped(kind, field(j, path, key), child(path, key)) || skip;
        if (skip) {
            dropped.insert("rle_morphism/" + name);
            continue;
        }
        const auto& src = lookup(ws.rle_spaces, j.at("src"), child(path, "src"), "RLE-space");
        const auto& dst = lookup(ws.rle_spaces, j.at("dst"), child(path, "dst"), "RLE-space");
        const auto& f = lookup(ws.maps, j.at("base_map"), child(path, "base_map"), "map");
        auto alpha = str_map(field(j, path, "alpha"), child(path, "alpha"));
        validated(bad, path, [&] {
            if (!same_space(f.second.map.dom, src.second.space.base()) || !same_space(f.second.map.cod, dst.second.space.base()))
                throw PreconditionError("base map '" + f.first + "' does not run between the two bases");
            auto pb = pullback_etale(f.second.map, dst.second.space.etale.bundle);
            auto a = SpaceMap::from_ids(pb.result.total, src.second.space.etale.total(), alpha);
            ws.rle_morphisms.emplace(name, RLEMorphismEntry{src.first, dst.first, f.first,
                                                            RLEInvMorphism::create(src.second.space, dst.second.space,
                                                                                   f.second.map, std::move(a))});
        });
    }
    if (doc.contains("expectations")) {
        const auto& e = object_at(doc.at("expectations"), "/expectations", {"filters", "classification", "spectra"});
        ws.expectations = e;
    }
    if (!bad.empty()) {
        if (strict) throw StrictFailure(bad);
        ws.diagnostics = std::move(bad);
    }
    return ws;
}

inline Workspace parse_workspace_text(const std::string& text, bool strict = true) {
    json doc;
    try {
        doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? json() : json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("syntax", {"/", e.what()});
    }
    return parse_workspace(doc, strict);
}

// --- canonical serialization ----------------------------------------------------

inline json lattice_to_json(const ResiduatedLattice& l) {
    json j;
    j["carrier"] = l.ids();
    json leq = json::array(), mul = json::object(), imp = json::object();
    for (Elem x = 0; x < l.size(); ++x)
        for (Elem y = 0; y < l.size(); ++y) {
            if (x != y && l.leq(x, y)) leq.push_back({l.id(x), l.id(y)});
            if (x <= y) mul[l.id(x) + "," + l.id(y)] = l.id(l.mul(x, y));
            imp[l.id(x) + "," + l.id(y)] = l.id(l.imp(x, y));
        }
    j["leq"] = leq;
    j["mul"] = mul;
    j["imp"] = imp;
    j["bot"] = l.id(l.bot());
    j["top"] = l.id(l.top());
    return j;
}

inline json space_to_json(const FiniteSpace& s) {
    json opens = json::array();
    for (const auto& o : s.opens()) {
        json ids = json::array();
        for_each_member(o, [&](std::size_t i) { ids.push_back(s.id(i)); });
        opens.push_back(ids);
    }
    return {{"points", s.points()}, {"opens", opens}};
}

inline json table_to_json(const SpaceMap& m) {
    json t = json::object();
    for (std::size_t i = 0; i < m.table.size(); ++i) t[m.dom->id(i)] = m.cod->id(m.table[i]);
    return t;
}

inline json stalk_ops_to_json(const Bundle& b, const StalkOps& ops) {
    json so = json::object();
    for (auto op : kStalkOps) {
        json t = json::object();
        const auto& tab = ops.table[static_cast<int>(op)];
        for (std::size_t s = 0; s < ops.n; ++s)
            for (std::size_t u = 0; u < ops.n; ++u)
                if (tab[s * ops.n + u] != npos)
                    t[b.total->id(s) + "," + b.total->id(u)] = b.total->id(tab[s * ops.n + u]);
        so[op_key(op)] = t;
    }
    json zero = json::object(), one = json::object();
    for (std::size_t p = 0; p < b.base->size(); ++p) {
        zero[b.base->id(p)] = b.total->id(ops.zero[p]);
        one[b.base->id(p)] = b.total->id(ops.one[p]);
    }
    return {{"stalk_ops", so}, {"zero", zero}, {"one", one}};
}

inline json serialize_workspace(const Workspace& ws) {
    json doc = json::object();
    for (const auto& [n, e] : ws.lattices) doc["lattices"][n] = lattice_to_json(*e.algebra);
    for (const auto& [n, s] : ws.spaces) doc["spaces"][n] = space_to_json(*s);
    for (const auto& [n, e] : ws.maps) doc["maps"][n] = {{"dom", e.dom}, {"cod", e.cod}, {"table", table_to_json(e.map)}};
    for (const auto& [n, e] : ws.bundles) {
        json j = {{"total", e.total}, {"base", e.base}, {"proj", table_to_json(e.bundle.proj)}};
        if (e.ops) j.update(stalk_ops_to_json(e.bundle, *e.ops));
        doc["bundles"][n] = j;
    }
    for (const auto& [n, e] : ws.morphisms) {
        json t = json::object();
        for (Elem x = 0; x < e.morphism.table.size(); ++x) t[e.morphism.dom->id(x)] = e.morphism.cod->id(e.morphism.table[x]);
        doc["morphisms"][n] = {{"dom", e.dom}, {"cod", e.cod}, {"map", t}};
    }
    for (const auto& [n, e] : ws.rle_spaces) doc["rle_spaces"][n] = {{"bundle", e.bundle}};
    for (const auto& [n, e] : ws.rle_morphisms)
        doc["rle_morphisms"][n] = {{"src", e.src}, {"dst", e.dst}, {"base_map", e.base_map},
                                   {"alpha", table_to_json(e.morphism.alpha)}};
    if (!ws.expectations.empty()) doc["expectations"] = ws.expectations;
    return doc;
}

inline bool operator==(const Workspace& a, const Workspace& b) {
    auto keys_equal = [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return false;
        for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
            if (i->first != j->first) return false;
        return true;
    };
    if (!keys_equal(a.lattices, b.lattices) || !keys_equal(a.spaces, b.spaces) || !keys_equal(a.maps, b.maps) ||
        !keys_equal(a.bundles, b.bundles) || !keys_equal(a.morphisms, b.morphisms) ||
        !keys_equal(a.rle_spaces, b.rle_spaces) || !keys_equal(a.rle_morphisms, b.rle_morphisms))
        return false;
    for (const auto& [n, e] : a.lattices)
        if (!(*e.algebra == *b.lattices.at(n).algebra)) return false;
    for (const auto& [n, s] : a.spaces)
        if (!(*s == *b.spaces.at(n))) return false;
    for (const auto& [n, e] : a.maps) {
        const auto& o = b.maps.at(n);
        if (e.dom != o.dom || e.cod != o.cod || !(e.map == o.map)) return false;
    }
    for (const auto& [n, e] : a.bundles) {
        const auto& o = b.bundles.at(n);
        if (e.total != o.total || e.base != o.base || !(e.bundle.proj == o.bundle.proj) || e.ops != o.ops) return false;
    }
    for (const auto& [n, e] : a.morphisms) {
        const auto& o = b.morphisms.at(n);
        if (e.dom != o.dom || e.cod != o.cod || !(e.morphism == o.morphism)) return false;
    }
    for (const auto& [n, e] : a.rle_spaces)
        if (e.bundle != b.rle_spaces.at(n).bundle) return false;
    for (const auto& [n, e] : a.rle_morphisms) {
        const auto& o = b.rle_morphisms.at(n);
        if (e.src != o.src || e.dst != o.dst || e.base_map != o.base_map || !(e.morphism == o.morphism)) return false;
    }
    return a.expectations == b.expectations && a.diagnostics == b.diagnostics;
}

}  // namespace rlsheaf::cli
