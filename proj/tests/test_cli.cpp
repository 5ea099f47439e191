#include "fixtures.hpp"
#include "rlsheaf/cli/commands.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace rlsheaf;
using namespace rlsheaf::cli;

namespace {

std::string corpus_path() { return std::string(RLSHEAF_DATA_DIR) + "/fixtures.json"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const Workspace& corpus() {
    static const Workspace ws = parse_workspace_text(read_file(corpus_path()));
    return ws;
}

std::string joined(const Outcome& o) {
    std::string out;
    for (const auto& l : o.text) out += l + "\n";
    return out;
}

json minimal() {
    return json::parse(R"({
      "lattices": {"B": {"carrier": ["0", "1"], "hasse": [["0", "1"]],
                         "mul": {"0,0": "0", "0,1": "0", "1,1": "1"}, "bot": "0", "top": "1"}},
      "spaces": {"pt": {"points": ["*"], "opens": [[], ["*"]]},
                 "pair": {"points": ["p", "q"], "opens": [[], ["p", "q"]]}},
      "bundles": {"b": {"total": "pair", "base": "pt", "proj": {"p": "*", "q": "*"},
                        "stalks": {"*": {"lattice": "B", "map": {"0": "p", "1": "q"}}}}}
    })");
}

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    std::string cmd = std::string(RLSHEAF_CLI) + " -w " + corpus_path() + " " + args + " 2>&1";
    Run r{0, {}};
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    while (std::fgets(buf, sizeof buf, p)) r.out += buf;
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Corpus, AgreesWithHandTranscribedFixtures) {
    const auto& ws = corpus();
    EXPECT_EQ(*ws.lattices.at("A2").algebra, *fx::a2());
    EXPECT_EQ(*ws.lattices.at("A3").algebra, *fx::a3());
    EXPECT_EQ(*ws.lattices.at("A4").algebra, *fx::a4());
    EXPECT_EQ(*ws.lattices.at("A6").algebra, *fx::a6());
    EXPECT_EQ(*ws.lattices.at("A8").algebra, *fx::a8());
    std::vector<std::pair<std::string, RLBundle>> bundles{
        {"etspecha4", fx::etspecha4()}, {"etmaxda6", fx::etmaxda6()}, {"etminpa8", fx::etminpa8()},
        {"indiscrete_a2", fx::indiscrete_a2()}, {"sierpinski_diagonal", fx::sierpinski_diagonal()}};
    for (const auto& [name, rb] : bundles) {
        const auto& e = ws.bundles.at(name);
        ASSERT_TRUE(e.is_rl()) << name;
        EXPECT_EQ(*e.bundle.total, *rb.total()) << name;
        EXPECT_EQ(*e.bundle.base, *rb.base()) << name;
        EXPECT_EQ(e.bundle.proj.table, rb.bundle.proj.table) << name;
        EXPECT_EQ(*e.ops, rb.ops) << name;
    }
    EXPECT_TRUE(ws.diagnostics.empty());
}

TEST(Corpus, RoundTripsThroughSerialization) {
    const auto& ws = corpus();
    auto doc = serialize_workspace(ws);
    auto again = parse_workspace(doc);
    EXPECT_TRUE(again == ws);
    EXPECT_EQ(serialize_workspace(again).dump(), doc.dump());
    auto text = parse_workspace_text(doc.dump(1));
    EXPECT_TRUE(text == ws);
}

TEST(Parse, EmptyDocumentIsEmptyWorkspace) {
    auto ws = parse_workspace_text("  \n");
    EXPECT_TRUE(ws.lattices.empty() && ws.spaces.empty() && ws.bundles.empty());
    EXPECT_TRUE(parse_workspace_text("{}") == ws);
}

TEST(Parse, DanglingBaseReferenceNamesTheKey) {
    auto doc = minimal();
    doc["bundles"]["b"]["base"] = "nowhere";
    try {
        parse_workspace(doc);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.kind(), "reference");
        EXPECT_EQ(e.diagnostic().path, "/bundles/b/base");
        EXPECT_NE(e.diagnostic().message.find("nowhere"), std::string::npos);
    }
}

TEST(Parse, SyntaxProblems) {
    EXPECT_THROW(parse_workspace_text("{\"lattices\": "), InputError);
    auto doc = minimal();
    doc["spaces"]["pt"]["colour"] = "red";
    try {
        parse_workspace(doc);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.kind(), "syntax");
        EXPECT_EQ(e.diagnostic().path, "/spaces/pt/colour");
    }
    doc = minimal();
    doc["lattices"]["B"]["mul"]["01"] = "0";
    EXPECT_THROW(parse_workspace(doc), InputError);
    doc = minimal();
    doc["lattices"]["B"]["leq"] = json::array({json::array({"0", "1"})});
    EXPECT_THROW(parse_workspace(doc), InputError);
}

TEST(Parse, UpperTriangularProductIsSymmetrized) {
    auto ws = parse_workspace(minimal());
    const auto& b = *ws.lattices.at("B").algebra;
    EXPECT_EQ(b.mul(b.require("1"), b.require("0")), b.require("0"));
    auto doc = minimal();
    doc["lattices"]["B"]["mul"]["1,0"] = "1";  // contradicts 0,1 ↦ 0
    EXPECT_THROW(parse_workspace(doc), StrictFailure);
}

TEST(Parse, StrictAndLenientValidation) {
    auto doc = minimal();
    doc["lattices"]["B"]["mul"].erase("0,1");
    try {
        parse_workspace(doc);
        FAIL();
    } catch (const StrictFailure& e) {
        EXPECT_EQ(e.diagnostics().front().path, "/lattices/B");
    }
    auto ws = parse_workspace(doc, false);
    EXPECT_TRUE(ws.lattices.empty());
    EXPECT_TRUE(ws.bundles.empty());
    ASSERT_EQ(ws.diagnostics.size(), 2u);
    EXPECT_EQ(ws.diagnostics[1].path, "/bundles/b/stalks/*/lattice");
    EXPECT_EQ(run_command(ws, "validate", {}).exit, 1);

    doc = minimal();
    doc["spaces"]["pair"]["opens"] = json::array({json::array(), json::array({"p"}), json::array({"q"})});
    EXPECT_THROW(parse_workspace(doc), StrictFailure);
}

TEST(Commands, FiltersAndClassification) {
    auto o = run_command(corpus(), "filters", {"A4"});
    EXPECT_EQ(o.exit, 0);
    ASSERT_EQ(o.result["filters"].size(), 4u);
    std::set<std::string> names;
    for (const auto& f : o.result["filters"]) names.insert(f["name"].get<std::string>());
    EXPECT_EQ(names, (std::set<std::string>{"F1", "F2", "F3", "F4"}));
    auto c = run_command(corpus(), "classify", {"A6"});
    EXPECT_EQ(c.result["max"], json::array({"F2", "F3"}));
    EXPECT_EQ(c.result["min"], json::array({"F1"}));
}

TEST(Commands, SpectrumRows) {
    Flags fl;
    fl.set = "spec";
    fl.flavor = "hull";
    auto o = run_command(corpus(), "spectrum", {"A4"}, fl);
    EXPECT_EQ(o.result["opens"], json::parse(R"([[], ["F2"], ["F2", "F3"], ["F3"]])"));
    fl.set = "max";
    fl.flavor = "dual";
    EXPECT_EQ(run_command(corpus(), "spectrum", {"A6"}, fl).result["opens"], o.result["opens"]);
    fl.flavor = "sideways";
    EXPECT_THROW(run_command(corpus(), "spectrum", {"A6"}, fl), UsageError);
}

TEST(Commands, SheafifyIndiscretePair) {
    auto o = run_command(corpus(), "sheafify", {"indiscrete_a2"});
    EXPECT_EQ(o.exit, 0);
    EXPECT_NE(joined(o).find("étalé: yes; germs: 2; counit injective: yes; continuous: yes; open: no"), std::string::npos);
    auto c = run_command(corpus(), "counit-check", {"indiscrete_a2"});
    EXPECT_EQ(c.exit, 1);
    EXPECT_FALSE(c.result["open"].get<bool>());
    EXPECT_EQ(run_command(corpus(), "counit-check", {"sierpinski_diagonal"}).exit, 0);
    EXPECT_EQ(run_command(corpus(), "counit-check", {"branching"}).result["injective"], false);
}

TEST(Commands, BaseChangeAndSections) {
    EXPECT_EQ(run_command(corpus(), "pullback", {"fold_to_F2", "etspecha4"}).result["points"].size(), 4u);
    auto g = run_command(corpus(), "gamma", {"Y"});
    EXPECT_EQ(g.result["sections"].size(), 6u);
    auto c = run_command(corpus(), "compose-rle", {"x_to_y", "y_to_z"});
    EXPECT_EQ(c.exit, 0);
    EXPECT_EQ(c.result["alpha"]["(*|a_1)"], "1_1");
    EXPECT_THROW(run_command(corpus(), "compose-rle", {"y_to_z", "x_to_y"}), InputError);
    Flags fl;
    fl.open = "{x}";
    EXPECT_EQ(run_command(corpus(), "sections", {"sierpinski_diagonal"}, fl).result["sections"].size(), 4u);
    fl.open = "{y}";
    EXPECT_EQ(run_command(corpus(), "sections", {"sierpinski_diagonal"}, fl).exit, 1);
    EXPECT_EQ(run_command(corpus(), "sections", {"etspecha4"}).result["sections"].size(), 4u);
}

TEST(Commands, SuitesPassOnTheCorpus) {
    EXPECT_EQ(run_command(corpus(), "validate", {}).exit, 0);
    Flags fl;
    fl.seed = seed_from_env();
    auto laws = run_command(corpus(), "law-suite", {}, fl);
    EXPECT_EQ(laws.exit, 0) << laws.failures.size();
    auto adj = run_command(corpus(), "adjunction-suite", {});
    EXPECT_EQ(adj.exit, 0);
    EXPECT_GT(adj.result["passed"].get<std::size_t>(), 100u);
}

TEST(Commands, UnknownCommandAndDot) {
    EXPECT_THROW(run_command(corpus(), "frobnicate", {}), UsageError);
    EXPECT_THROW(run_command(corpus(), "filters", {}), UsageError);
    EXPECT_THROW(run_command(corpus(), "filters", {"A5"}), InputError);
    auto d = run_command(corpus(), "export-dot", {"A4"});
    EXPECT_EQ(d.text.front(), "digraph \"A4\" {");
    EXPECT_NE(joined(d).find("\"0\" -> \"a\""), std::string::npos);
    EXPECT_NE(joined(run_command(corpus(), "export-dot", {"sierpinski_diagonal"})).find("cluster_x"), std::string::npos);
}

TEST(Binary, ExitCodes) {
    EXPECT_EQ(run_cli("validate").code, 0);
    EXPECT_EQ(run_cli("law-suite").code, 0);
    EXPECT_EQ(run_cli("counit-check indiscrete_a2").code, 1);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
    EXPECT_EQ(run_cli("filters A5").code, 2);
    EXPECT_EQ(run_cli("--format sideways validate").code, 2);
    auto j = run_cli("--format json filters A8");
    ASSERT_EQ(j.code, 0);
    auto doc = json::parse(j.out);
    EXPECT_EQ(doc["command"], "filters");
    EXPECT_TRUE(doc["ok"].get<bool>());
    EXPECT_EQ(doc["result"]["filters"].size(), 5u);
    auto m = run_cli("--format machine-readable sheafify indiscrete_a2");
    EXPECT_EQ(json::parse(m.out)["result"]["germ_count"], 2);
}
