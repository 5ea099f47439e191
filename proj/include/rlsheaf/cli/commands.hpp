#pragma once

// Command dispatch for the rlsheaf tool. Every command produces an Outcome:
// text lines, a machine-readable result, failure messages and an exit code
// (0 success, 1 a failed check, 2 bad usage or input).

#include "rlsheaf/cli/dot.hpp"
#include "rlsheaf/cli/suites.hpp"
#include "rlsheaf/sheafify.hpp"

namespace rlsheaf::cli {

struct Flags {
    std::optional<std::string> set, flavor, open;
    std::uint64_t seed = kDefaultSeed;
    bool exploratory = false;
};

struct Outcome {
    int exit = 0;
    json result = json::object();
    std::vector<std::string> text;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        failures.push_back(std::move(msg));
        exit = std::max(exit, 1);
    }
    void check(bool ok, const std::string& msg) {
        if (!ok) fail(msg);
    }
};

/// Bad command line; exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{
        "validate", "filters", "classify", "quotient", "spectrum", "sections", "check-etale", "check-rl-bundle",
        "sheafify", "counit-check", "pullback", "compose-rle", "gamma", "adjunction-suite", "law-suite",
        "export-dot", "serialize"};
    return names;
}

namespace detail {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

template <class Registry>
const auto& need(const Registry& r, const std::string& name, const char* kind) {
    auto it = r.find(name);
    if (it == r.end()) throw InputError("reference", {"/", std::string("unknown ") + kind + " '" + name + "'"});
    return it->second;
}

inline void arity(const std::vector<std::string>& args, std::size_t n, const std::string& usage) {
    if (args.size() != n) throw UsageError("usage: " + usage);
}

/// "{a,1}", "a,1" or a bare id.
inline std::vector<Id> element_list(std::string s) {
    if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
    std::vector<Id> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

/// Table names for filters of `lattice` recorded under expectations.filters.
inline std::map<Subset, std::string> filter_names(const Workspace& ws, const std::string& lattice) {
    std::map<Subset, std::string> out;
    const auto& e = ws.expectations;
    if (!e.contains("filters") || !e["filters"].contains(lattice)) return out;
    const auto& l = *ws.lattices.at(lattice).algebra;
    for (const auto& [name, ids] : e["filters"][lattice].items()) {
        try {
            out.emplace(l.subset(ids.get<std::vector<Id>>()), name);
        } catch (const std::exception&) {
        }
    }
    return out;
}

inline std::string label(const std::map<Subset, std::string>& names, const ResiduatedLattice& l, const Subset& f) {
    auto it = names.find(f);
    return it == names.end() ? l.format(f) : it->second;
}

inline Subset parse_filter_arg(const Workspace& ws, const std::string& lattice, const std::string& arg) {
    const auto& l = *ws.lattices.at(lattice).algebra;
    for (const auto& [s, name] : filter_names(ws, lattice))
        if (name == arg) return s;
    try {
        return l.subset(element_list(arg));
    } catch (const PreconditionError& e) {
        throw InputError("reference", {"/", e.what()});
    }
}

inline SpectrumConfig spectrum_config(const Workspace& ws, const std::string& lattice, PrimeFamily fam,
                                      SpectrumFlavor fl) {
    const auto& l = ws.lattices.at(lattice).algebra;
    auto names = filter_names(ws, lattice);
    auto family = prime_family(all_filters(l), fam);
    std::vector<Id> labels;
    for (const auto& f : family) labels.push_back(label(names, *l, f));
    return SpectrumConfig(l, family, fl, labels);
}

inline std::vector<std::vector<Id>> sorted_opens(const FiniteSpace& s) {
    auto v = opens_by_name(s);
    std::sort(v.begin(), v.end());
    return v;
}

inline std::string list(const std::vector<Id>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out + "}";
}

inline std::vector<Id> names_of(const std::map<Subset, std::string>& names, const ResiduatedLattice& l,
                                const std::vector<Subset>& fs) {
    std::vector<Id> out;
    for (const auto& f : fs) out.push_back(label(names, l, f));
    std::sort(out.begin(), out.end());
    return out;
}

inline void report_suite(Outcome& o, const SuiteResult& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        o.text.push_back(std::string(c.ok ? "PASS " : "FAIL ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
        o.check(c.ok, c.name);
    }
    o.result["checks"] = checks;
    o.result["passed"] = r.checks.size() - r.failed();
    o.result["failed"] = r.failed();
}

// --- individual commands ---------------------------------------------------------

inline void check_expectations(const Workspace& ws, Outcome& o) {
    const auto& e = ws.expectations;
    json res = json::object();
    if (e.contains("filters"))
        for (const auto& [ln, table] : e["filters"].items()) {
            const auto& l = need(ws.lattices, ln, "lattice").algebra;
            std::set<Subset> want, got;
            for (const auto& [fname, ids] : table.items()) want.insert(l->subset(ids.get<std::vector<Id>>()));
            for (const auto& f : all_filters(l).filters) got.insert(f);
            bool ok = want == got;
            res["filters"][ln] = ok;
            o.text.push_back("expectation filters " + ln + ": " + (ok ? "match" : "MISMATCH"));
            o.check(ok, "filters of " + ln + " differ from the recorded table");
        }
    if (e.contains("classification"))
        for (const auto& [ln, cls] : e["classification"].items()) {
            const auto& l = need(ws.lattices, ln, "lattice").algebra;
            auto names = filter_names(ws, ln);
            auto fl = all_filters(l);
            for (const auto& [which, want] : cls.items()) {
                auto got = names_of(names, *l, prime_family(fl, parse_family(which)));
                auto w = want.get<std::vector<Id>>();
                std::sort(w.begin(), w.end());
                bool ok = got == w;
                res["classification"][ln][which] = ok;
                o.text.push_back("expectation " + which + " " + ln + ": " + (ok ? "match" : "MISMATCH"));
                o.check(ok, which + " of " + ln + " is " + list(got));
            }
        }
    if (e.contains("spectra"))
        for (const auto& row : e["spectra"]) {
            auto ln = row.at("lattice").get<std::string>();
            auto set = row.at("set").get<std::string>(), flavor = row.at("flavor").get<std::string>();
            need(ws.lattices, ln, "lattice");
            auto space = spectral_space(spectrum_config(ws, ln, parse_family(set), parse_flavor(flavor)));
            auto want = row.at("opens").get<std::vector<std::vector<Id>>>();
            for (auto& w : want) std::sort(w.begin(), w.end());
            std::sort(want.begin(), want.end());
            bool ok = sorted_opens(space) == want;
            auto key = set + "/" + flavor + " " + ln;
            res["spectra"][key] = ok;
            o.text.push_back("expectation spectrum " + key + ": " + (ok ? "match" : "MISMATCH"));
            o.check(ok, "spectrum " + key + " differs from the recorded opens");
        }
    o.result["expectations"] = res;
}

inline Outcome validate(const Workspace& ws) {
    Outcome o;
    for (const auto& [n, e] : ws.lattices) {
        auto rep = verify_rl(e.algebra->tables());
        o.result["lattices"][n] = rep.ok();
        o.text.push_back("lattice " + n + ": " + std::to_string(e.algebra->size()) + " elements, " + (rep.ok() ? "ok" : "FAILED"));
        o.check(rep.ok(), "lattice " + n);
    }
    for (const auto& [n, s] : ws.spaces) {
        o.result["spaces"][n] = true;
        o.text.push_back("space " + n + ": " + std::to_string(s->size()) + " points, " + std::to_string(s->opens().size()) + " opens");
    }
    for (const auto& [n, e] : ws.maps) {
        o.result["maps"][n] = true;
        o.text.push_back("map " + n + ": " + e.dom + " → " + e.cod + ", continuous");
    }
    for (const auto& [n, e] : ws.bundles) {
        bool ok = !e.is_rl() || verify_rl_bundle(e.rl()).ok();
        o.result["bundles"][n] = {{"etale", is_etale(e.bundle)}, {"rl", e.is_rl()}, {"ok", ok}};
        o.text.push_back("bundle " + n + ": over " + e.base + ", étalé " + yes(is_etale(e.bundle)) +
                         (e.is_rl() ? ", stalk residuated lattice " + std::string(ok ? "ok" : "FAILED") : ""));
        o.check(ok, "bundle " + n);
    }
    for (const auto& [n, e] : ws.morphisms) {
        bool ok = is_rl_morphism(e.morphism.table, *e.morphism.dom, *e.morphism.cod);
        o.result["morphisms"][n] = ok;
        o.text.push_back("morphism " + n + ": " + e.dom + " → " + e.cod + (ok ? ", ok" : ", FAILED"));
        o.check(ok, "morphism " + n);
    }
    for (const auto& [n, e] : ws.rle_spaces) {
        o.result["rle_spaces"][n] = true;
        o.text.push_back("RLE-space " + n + ": " + e.bundle);
    }
    for (const auto& [n, e] : ws.rle_morphisms) {
        o.result["rle_morphisms"][n] = true;
        o.text.push_back("RLE morphism " + n + ": " + e.src + " → " + e.dst + " over " + e.base_map);
    }
    json diags = json::array();
    for (const auto& d : ws.diagnostics) {
        diags.push_back({{"path", d.path}, {"message", d.message}});
        o.text.push_back("diagnostic " + d.line());
        o.fail(d.line());
    }
    o.result["diagnostics"] = diags;
    check_expectations(ws, o);
    return o;
}

inline Outcome filters(const Workspace& ws, const std::string& ln) {
    Outcome o;
    const auto& l = need(ws.lattices, ln, "lattice").algebra;
    auto fl = all_filters(l);
    auto names = filter_names(ws, ln);
    std::vector<std::pair<std::string, std::size_t>> rows;
    for (std::size_t i = 0; i < fl.filters.size(); ++i) rows.emplace_back(l->format(fl.filters[i]), i);
    std::sort(rows.begin(), rows.end());
    json arr = json::array();
    for (const auto& [set, i] : rows) {
        const auto& fg = fl.flags[i];
        auto it = names.find(fl.filters[i]);
        json row = {{"elements", set}, {"proper", fg.proper}, {"prime", fg.prime}, {"maximal", fg.maximal},
                    {"minimal_prime", fg.minimal_prime}};
        std::string line = set;
        if (it != names.end()) {
            row["name"] = it->second;
            line = it->second + " = " + set;
        }
        if (fg.proper) line += " proper";
        if (fg.prime) line += " prime";
        if (fg.maximal) line += " maximal";
        if (fg.minimal_prime) line += " minimal-prime";
        arr.push_back(row);
        o.text.push_back(line);
    }
    o.result["lattice"] = ln;
    o.result["filters"] = arr;
    return o;
}

inline Outcome classify(const Workspace& ws, const std::string& ln) {
    Outcome o;
    const auto& l = need(ws.lattices, ln, "lattice").algebra;
    auto fl = all_filters(l);
    auto names = filter_names(ws, ln);
    for (auto [key, fam] : {std::pair{"spec", PrimeFamily::spec}, {"max", PrimeFamily::max}, {"min", PrimeFamily::min}}) {
        auto v = names_of(names, *l, prime_family(fl, fam));
        o.result[key] = v;
        o.text.push_back(std::string(key) + "(" + ln + ") = " + list(v));
    }
    return o;
}

inline Outcome quotient_cmd(const Workspace& ws, const std::string& ln, const std::string& farg) {
    Outcome o;
    const auto& l = need(ws.lattices, ln, "lattice").algebra;
    auto f = parse_filter_arg(ws, ln, farg);
    if (!is_filter(*l, f)) {
        o.fail(l->format(f) + " is not a filter of " + ln);
        return o;
    }
    auto q = quotient(l, f);
    const auto& a = *q.algebra;
    o.result["filter"] = l->format(f);
    o.result["blocks"] = a.ids();
    o.result["algebra"] = lattice_to_json(a);
    o.text.push_back(ln + " / " + l->format(f) + " has " + std::to_string(a.size()) + " blocks");
    for (const auto& id : a.ids()) o.text.push_back("  " + id);
    o.check(verify_rl(a.tables()).ok(), "quotient is not a residuated lattice");
    return o;
}

inline Outcome spectrum(const Workspace& ws, const std::string& ln, const Flags& fl) {
    Outcome o;
    need(ws.lattices, ln, "lattice");
    auto fam = parse_family(fl.set.value_or("spec"));
    auto flavor = parse_flavor(fl.flavor.value_or("hull"));
    auto space = spectral_space(spectrum_config(ws, ln, fam, flavor));
    auto opens = sorted_opens(space);
    o.result["points"] = space.points();
    o.result["opens"] = opens;
    o.text.push_back("points " + list(space.points()));
    std::string line = "opens";
    for (const auto& u : opens) line += " " + list(u);
    o.text.push_back(line);
    return o;
}

inline Subset base_subset(const Bundle& b, const std::string& arg) {
    try {
        return b.base->subset(element_list(arg));
    } catch (const PreconditionError& e) {
        throw InputError("reference", {"/", e.what()});
    }
}

inline Outcome sections_cmd(const Workspace& ws, const std::string& bn, const Flags& fl) {
    Outcome o;
    const auto& b = need(ws.bundles, bn, "bundle").bundle;
    auto u = fl.open ? base_subset(b, *fl.open) : b.base->whole();
    if (!b.base->is_open(u)) {
        o.fail(b.base->format(u) + " is not open in the base");
        return o;
    }
    std::vector<std::string> ids;
    for (const auto& s : sections(b, u)) ids.push_back(section_id(b, s));
    std::sort(ids.begin(), ids.end());
    o.result["open"] = b.base->format(u);
    o.result["sections"] = ids;
    o.text.push_back(std::to_string(ids.size()) + " sections over " + b.base->format(u));
    for (const auto& s : ids) o.text.push_back("  " + s);
    return o;
}

inline Outcome check_etale_cmd(const Workspace& ws, const std::string& bn) {
    Outcome o;
    const auto& b = need(ws.bundles, bn, "bundle").bundle;
    bool c = is_continuous(b.proj), op = is_open_map(b.proj), li = is_locally_injective(b.proj);
    bool lh = is_local_homeomorphism(b.proj);
    o.result = {{"continuous", c}, {"open", op}, {"locally_injective", li}, {"etale", lh}};
    o.text.push_back("continuous: " + yes(c) + "; open: " + yes(op) + "; locally injective: " + yes(li));
    o.text.push_back("étalé: " + yes(lh));
    o.check(lh, bn + " is not étalé");
    return o;
}

inline Outcome check_rl_bundle_cmd(const Workspace& ws, const std::string& bn) {
    Outcome o;
    const auto& e = need(ws.bundles, bn, "bundle");
    if (!e.is_rl()) {
        o.fail(bn + " carries no stalk operations");
        return o;
    }
    auto rep = verify_rl_bundle(e.rl());
    o.result["ok"] = rep.ok();
    o.result["violations"] = rep.lines();
    for (std::size_t p = 0; p < e.bundle.base->size() && rep.ok(); ++p) {
        const auto& id = e.bundle.base->id(p);
        auto a = stalk_algebra(e.bundle, *e.ops, id);
        o.result["stalks"][id] = a.size();
        o.text.push_back("stalk over " + id + ": " + std::to_string(a.size()) + " elements");
    }
    o.text.push_back(std::string("stalk residuated lattice: ") + (rep.ok() ? "ok" : "FAILED"));
    for (const auto& l : rep.lines()) o.fail(l);
    return o;
}

inline Outcome sheafify_cmd(const Workspace& ws, const std::string& bn) {
    Outcome o;
    const auto& e = need(ws.bundles, bn, "bundle");
    auto g = etale_of(e.bundle);
    auto r = check_counit(g);
    std::vector<std::string> germs;
    for (const auto& germ : g.germs) germs.push_back(germ_id(e.bundle, germ));
    bool et = is_etale(g.etale);
    o.result = {{"etale", et}, {"germs", germs}, {"germ_count", germs.size()},
                {"counit", {{"injective", r.injective}, {"continuous", r.continuous}, {"open", r.open}}}};
    o.text.push_back("étalé: " + yes(et) + "; germs: " + std::to_string(germs.size()) +
                     "; counit injective: " + yes(r.injective) + "; continuous: " + yes(r.continuous) +
                     "; open: " + yes(r.open));
    for (const auto& id : germs) o.text.push_back("  " + id);
    if (e.is_rl()) {
        auto rg = rl_germ_ops(e.rl(), g);
        bool ok = verify_rl_bundle(rg).ok();
        bool eps = is_rl_bundle_morphism(counit(g), rg, e.rl());
        o.result["germ_stalk_rl"] = ok;
        o.result["counit_rl_morphism"] = eps;
        o.text.push_back("germ stalk residuated lattice: " + yes(ok) + "; counit preserves operations: " + yes(eps));
        o.check(ok && eps, "germ space operations");
    }
    o.check(et, "germ space is not étalé");
    return o;
}

inline Outcome counit_check(const Workspace& ws, const std::string& bn) {
    Outcome o;
    const auto& b = need(ws.bundles, bn, "bundle").bundle;
    auto r = check_counit(etale_of(b));
    o.result = {{"over_base", r.over_base}, {"injective", r.injective}, {"surjective", r.surjective},
                {"continuous", r.continuous}, {"open", r.open}, {"image_open", r.image_open},
                {"isomorphism", r.isomorphism}, {"source_etale", is_etale(b)}};
    o.text.push_back("over base: " + yes(r.over_base) + "; injective: " + yes(r.injective) + "; continuous: " +
                     yes(r.continuous) + "; open: " + yes(r.open));
    o.text.push_back("surjective: " + yes(r.surjective) + "; image open: " + yes(r.image_open) +
                     "; isomorphism: " + yes(r.isomorphism));
    o.check(r.over_base, "counit does not commute with the projections");
    o.check(r.injective, "counit is not injective");
    o.check(r.continuous, "counit is not continuous");
    o.check(r.open, "counit is not open");
    if (is_etale(b)) o.check(r.isomorphism, "counit of an étalé is not an isomorphism");
    return o;
}

inline Outcome pullback_cmd(const Workspace& ws, const std::string& mn, const std::string& bn) {
    Outcome o;
    const auto& m = need(ws.maps, mn, "map");
    const auto& e = need(ws.bundles, bn, "bundle");
    if (m.cod != e.base) throw InputError("reference", {"/", "map '" + mn + "' does not land in the base of '" + bn + "'"});
    auto pb = pullback_etale(m.map, e.bundle);
    bool et = is_etale(pb.result);
    o.result["points"] = pb.result.total->points();
    o.result["etale"] = et;
    o.text.push_back(std::to_string(pb.result.total->size()) + " points over " + m.dom + "; étalé: " + yes(et));
    for (const auto& p : pb.result.total->points()) o.text.push_back("  " + p);
    if (is_etale(e.bundle)) o.check(et, "pullback of an étalé is not étalé");
    if (e.is_rl()) {
        bool ok = verify_rl_bundle(pullback_rl_etale(pb, e.rl())).ok();
        o.result["rl"] = ok;
        o.text.push_back("stalk residuated lattice: " + yes(ok));
        o.check(ok, "pulled-back operations");
    }
    return o;
}

inline Outcome compose_rle(const Workspace& ws, const std::string& n1, const std::string& n2) {
    Outcome o;
    const auto& m1 = need(ws.rle_morphisms, n1, "RLE morphism");
    const auto& m2 = need(ws.rle_morphisms, n2, "RLE morphism");
    if (m1.dst != m2.src) throw InputError("reference", {"/", "'" + n1 + "' ends at " + m1.dst + " but '" + n2 + "' starts at " + m2.src});
    const auto& b = ws.rle_spaces.at(m1.src).space;
    const auto& d = ws.rle_spaces.at(m2.dst).space;
    auto c = compose_rle_inv(b, d, m1.morphism, m2.morphism);
    o.result["src"] = m1.src;
    o.result["dst"] = m2.dst;
    o.result["base_map"] = table_to_json(c.f);
    o.result["alpha"] = table_to_json(c.alpha);
    o.text.push_back(m1.src + " → " + m2.dst);
    for (std::size_t i = 0; i < c.f.table.size(); ++i) o.text.push_back("  " + c.f.dom->id(i) + " ↦ " + c.f.cod->id(c.f.table[i]));
    for (std::size_t i = 0; i < c.alpha.table.size(); ++i)
        o.text.push_back("  α " + c.alpha.dom->id(i) + " ↦ " + c.alpha.cod->id(c.alpha.table[i]));
    return o;
}

inline Outcome gamma(const Workspace& ws, const std::string& rn) {
    Outcome o;
    const auto& x = need(ws.rle_spaces, rn, "RLE-space").space;
    auto g = section_functor_object(x);
    bool ok = verify_rl(g.algebra->tables()).ok();
    o.result["sections"] = g.algebra->ids();
    o.result["algebra"] = lattice_to_json(*g.algebra);
    o.result["ok"] = ok;
    o.text.push_back("Γ(" + rn + ") has " + std::to_string(g.algebra->size()) + " elements; residuated lattice: " + yes(ok));
    for (const auto& id : g.algebra->ids()) o.text.push_back("  " + id);
    o.check(ok, "global sections are not a residuated lattice");
    return o;
}

inline Outcome export_dot(const Workspace& ws, const std::string& name, const Flags& fl) {
    Outcome o;
    std::string text;
    if (auto it = ws.lattices.find(name); it != ws.lattices.end()) {
        if (fl.set || fl.flavor) {
            auto s = spectral_space(spectrum_config(ws, name, parse_family(fl.set.value_or("spec")),
                                                    parse_flavor(fl.flavor.value_or("hull"))));
            text = dot::specialization(name, s);
        } else {
            text = dot::hasse(name, *it->second.algebra);
        }
    } else if (auto s = ws.spaces.find(name); s != ws.spaces.end()) {
        text = dot::specialization(name, *s->second);
    } else if (auto b = ws.bundles.find(name); b != ws.bundles.end()) {
        text = dot::bundle(name, b->second.bundle);
    } else {
        throw InputError("reference", {"/", "no lattice, space or bundle named '" + name + "'"});
    }
    o.result["dot"] = text;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) o.text.push_back(line);
    return o;
}

}  // namespace detail

/// Library errors from the modules become exit 1 failures; unknown names and
/// bad arguments surface as InputError/UsageError for the caller (exit 2).
inline Outcome run_command(const Workspace& ws, const std::string& cmd, const std::vector<std::string>& args,
                           const Flags& flags = {}) {
    using namespace detail;
    try {
        if (cmd == "validate") return arity(args, 0, "validate"), validate(ws);
        if (cmd == "filters") return arity(args, 1, "filters LATTICE"), filters(ws, args[0]);
        if (cmd == "classify") return arity(args, 1, "classify LATTICE"), classify(ws, args[0]);
        if (cmd == "quotient") return arity(args, 2, "quotient LATTICE FILTER"), need(ws.lattices, args[0], "lattice"), quotient_cmd(ws, args[0], args[1]);
        if (cmd == "spectrum") {
            arity(args, 1, "spectrum LATTICE --set {spec|max|min} --flavor {hull|dual|patch}");
            try {
                if (flags.set) parse_family(*flags.set);
                if (flags.flavor) parse_flavor(*flags.flavor);
            } catch (const PreconditionError& e) {
                throw UsageError(e.what());
            }
            return spectrum(ws, args[0], flags);
        }
        if (cmd == "sections") return arity(args, 1, "sections BUNDLE [--open SET]"), sections_cmd(ws, args[0], flags);
        if (cmd == "check-etale") return arity(args, 1, "check-etale BUNDLE"), check_etale_cmd(ws, args[0]);
        if (cmd == "check-rl-bundle") return arity(args, 1, "check-rl-bundle BUNDLE"), check_rl_bundle_cmd(ws, args[0]);
        if (cmd == "sheafify") return arity(args, 1, "sheafify BUNDLE"), sheafify_cmd(ws, args[0]);
        if (cmd == "counit-check") return arity(args, 1, "counit-check BUNDLE"), counit_check(ws, args[0]);
        if (cmd == "pullback") return arity(args, 2, "pullback MAP BUNDLE"), pullback_cmd(ws, args[0], args[1]);
        if (cmd == "compose-rle") return arity(args, 2, "compose-rle M1 M2"), compose_rle(ws, args[0], args[1]);
        if (cmd == "gamma") return arity(args, 1, "gamma RLESPACE"), gamma(ws, args[0]);
        if (cmd == "adjunction-suite") {
            arity(args, 0, "adjunction-suite [--exploratory]");
            Outcome o;
            std::vector<std::string> skipped;
            report_suite(o, adjunction_suite(ws, flags.exploratory, &skipped));
            o.result["skipped"] = skipped;
            for (const auto& s : skipped) o.text.push_back("SKIP " + s);
            return o;
        }
        if (cmd == "law-suite") {
            arity(args, 0, "law-suite");
            Outcome o;
            report_suite(o, law_suite(ws, flags.seed));
            o.result["seed"] = flags.seed;
            return o;
        }
        if (cmd == "export-dot") return arity(args, 1, "export-dot OBJECT"), export_dot(ws, args[0], flags);
        if (cmd == "serialize") {
            arity(args, 0, "serialize");
            Outcome o;
            o.result = serialize_workspace(ws);
            o.text.push_back(o.result.dump(2));
            return o;
        }
    } catch (const InputError&) {
        throw;
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        Outcome o;
        o.fail(e.what());
        return o;
    }
    throw UsageError("unknown command '" + cmd + "'");
}

/// {"command", "ok", "exit", "result", "failures"}.
inline json outcome_to_json(const std::string& cmd, const Outcome& o) {
    return {{"command", cmd}, {"ok", o.exit == 0}, {"exit", o.exit}, {"result", o.result}, {"failures", o.failures}};
}

}  // namespace rlsheaf::cli
