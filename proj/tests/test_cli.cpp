#include <gtest/gtest.h>

#include <cstdlib>
#include <json.hpp>
#include <regex>
#include <sstream>

#include "dot_grammar.hpp"
#include "ragrisk/cli.hpp"
#include "ragrisk/report.hpp"
#include "ragrisk/risk.hpp"
#include "support.hpp"

using namespace ragrisk;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string& bundled_path() {
    static const std::string p = test::bundled_dir().string();
    return p;
}

/// Value of the SEVERITY column for one threat/stage row of the assess table.
std::string table_severity(const std::string& table, const std::string& threat, const std::string& stage) {
    std::istringstream in(table);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream cols(line);
        std::vector<std::string> c{std::istream_iterator<std::string>(cols), {}};
        if (c.size() == 6 && c[0] == threat && c[1] == stage) {
            return c[4];
        }
    }
    return "";
}

class EnvGuard {
public:
    explicit EnvGuard(const char* value) {
        if (const char* old = std::getenv("RAGRISK_WORKSPACE")) {
            saved_ = old;
        }
        if (value) {
            ::setenv("RAGRISK_WORKSPACE", value, 1);
        } else {
            ::unsetenv("RAGRISK_WORKSPACE");
        }
    }
    ~EnvGuard() {
        if (saved_) {
            ::setenv("RAGRISK_WORKSPACE", saved_->c_str(), 1);
        } else {
            ::unsetenv("RAGRISK_WORKSPACE");
        }
    }

private:
    std::optional<std::string> saved_;
};

}  // namespace

TEST(Validate, BundledHasZeroFindings) {
    const auto r = run({"validate", bundled_path()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0 findings"), std::string::npos);
}

TEST(Validate, DanglingTargetPrintsCode) {
    const auto r = run({"validate", test::fixture_dir("dangling-target").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("DANGLING_TARGET"), std::string::npos);
    const auto j = run({"validate", test::fixture_dir("dangling-target").string(), "--format", "json"});
    EXPECT_EQ(j.code, 1);
    const auto doc = json::parse(j.out);
    EXPECT_EQ(doc["count"], 1);
    EXPECT_EQ(doc["findings"][0]["code"], "DANGLING_TARGET");
    EXPECT_EQ(doc["findings"][0]["path"], "/threats/1/targets/1");
}

TEST(Validate, MissingFilesExitTwo) {
    test::TempDir dir;
    const auto r = run({"validate", dir.path().string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(Validate, SchemaErrorExitTwo) {
    const auto r = run({"validate", test::fixture_dir("factor-out-of-range").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("/threats/0/likelihood/size"), std::string::npos);
}

TEST(Assess, NoneShowsInherentOnly) {
    const auto r = run({"assess", bundled_path(), "--controls", "none"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("19.50"), std::string::npos);
    EXPECT_NE(r.out.find("19.88"), std::string::npos);
    EXPECT_EQ(r.out.find("residual"), std::string::npos);
}

TEST(Assess, AllShowsReferenceResiduals) {
    const auto r = run({"assess", bundled_path(), "--controls", "all"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(table_severity(r.out, "info_disclosure", "residual"), "10.41");
    EXPECT_EQ(table_severity(r.out, "poisoning", "residual"), "6.94");
    EXPECT_EQ(r.out, run({"assess", bundled_path()}).out);
}

TEST(Assess, SingleControlLiesBetweenBaselines) {
    const auto r = run({"assess", bundled_path(), "--controls", "input_validation"});
    ASSERT_EQ(r.code, 0);
    const auto& ws = test::bundled();
    const std::vector<std::string> one = {"input_validation"};
    const auto expected = assess(*ws.find_threat("info_disclosure"), select_controls(ws, one));
    EXPECT_EQ(table_severity(r.out, "info_disclosure", "residual"), display_round(expected.severity_score));
    EXPECT_LT(expected.severity_score, Rational(39, 2));
    EXPECT_GT(expected.severity_score, Rational(333, 32));
}

TEST(Assess, UnknownControlExitThreeNamesId) {
    const auto r = run({"assess", bundled_path(), "--controls", "input_validation,not_a_control"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("not_a_control"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Assess, JsonAndMarkdownFormats) {
    const auto j = run({"assess", bundled_path(), "--format", "json"});
    ASSERT_EQ(j.code, 0);
    const auto doc = json::parse(j.out);
    EXPECT_EQ(doc["assessments"].size(), 2u);
    EXPECT_EQ(doc["enabled_controls"].size(), 13u);
    const auto md = run({"assess", bundled_path(), "--format", "md"});
    EXPECT_NE(md.out.find("| poisoning | residual | 4.63 | 1.50 | 6.94 | Low |"), std::string::npos);
}

TEST(WhatIf, DisableEverythingMatchesNoneBaseline) {
    std::string ids;
    for (const auto& c : test::bundled().controls) {
        ids += (ids.empty() ? "" : ",") + c.id;
    }
    const auto r = run({"what-if", bundled_path(), "--disable", ids, "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = json::parse(r.out);
    EXPECT_TRUE(doc["enabled_controls"].empty());
    for (const auto& t : doc["threats"]) {
        EXPECT_EQ(t["delta_vs_none"]["exact"]["num"], 0);
        EXPECT_EQ(t["whatif"]["severity_score"], t["none"]);
    }
}

TEST(WhatIf, DisableDataGovernanceRaisesPoisoning) {
    const auto r = run({"what-if", bundled_path(), "--disable", "data_governance", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = json::parse(r.out);
    const auto& poisoning = doc["threats"][1];
    ASSERT_EQ(poisoning["threat_id"], "poisoning");
    const Rational residual(poisoning["whatif"]["severity_score"]["exact"]["num"].get<std::int64_t>(),
                            poisoning["whatif"]["severity_score"]["exact"]["den"].get<std::int64_t>());
    EXPECT_GT(residual, Rational(111, 16));

    // independent recomputation with every control except data_governance
    const auto& ws = test::bundled();
    std::vector<Control> rest;
    for (const auto& c : ws.controls) {
        if (c.id != "data_governance") {
            rest.push_back(c);
        }
    }
    EXPECT_EQ(residual, assess(*ws.find_threat("poisoning"), rest).severity_score);

    const auto table = run({"whatif", bundled_path(), "--disable", "data_governance"});
    EXPECT_EQ(table.code, 0);
    EXPECT_NE(table.out.find("8.53"), std::string::npos);
}

TEST(WhatIf, ConflictAndUnknownExitThree) {
    EXPECT_EQ(run({"what-if", bundled_path(), "--enable", "data_governance", "--disable", "data_governance"}).code, 3);
    const auto r = run({"what-if", bundled_path(), "--enable", "bogus_control"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("bogus_control"), std::string::npos);
}

TEST(WhatIf, EnableFromNoneBase) {
    const auto r = run({"what-if", bundled_path(), "--base", "none", "--enable", "data_governance", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["enabled_controls"], json::array({"data_governance"}));
}

TEST(Prioritize, FirstLineNamesTtpsControl) {
    const auto r = run({"prioritize", bundled_path()});
    ASSERT_EQ(r.code, 0);
    const auto first = r.out.substr(0, r.out.find('\n'));
    EXPECT_NE(first.find("adversarial_training"), std::string::npos) << first;
    EXPECT_NE(first.find("ttps"), std::string::npos) << first;
    const auto doc = json::parse(run({"prioritize", bundled_path(), "--format", "json"}).out);
    EXPECT_EQ(doc["priorities"][0]["control_id"], "adversarial_training");
}

TEST(Graph, EmptyModelIsValidEmptyDigraph) {
    const auto r = run({"graph", test::fixture_dir("empty-model").string()});
    ASSERT_EQ(r.code, 0);
    const auto parsed = dot::parse(r.out);
    EXPECT_TRUE(parsed.directed);
    EXPECT_TRUE(parsed.nodes.empty());
    EXPECT_TRUE(parsed.edges.empty());
}

TEST(Graph, BundledMatchesGoldenAndJsonParses) {
    const auto r = run({"graph", bundled_path(), "--format", "dot"});
    EXPECT_EQ(r.out, test::read_text(test::golden_path("rag-enterprise.dot")));
    const auto j = json::parse(run({"graph", bundled_path(), "--format", "json"}).out);
    EXPECT_EQ(j["name"], "rag-enterprise");
}

TEST(Report, WritesFileContainingResidual) {
    test::TempDir dir;
    const auto path = dir.path() / "out.md";
    const auto r = run({"report", bundled_path(), "-o", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(test::read_text(path).find("10.41"), std::string::npos);
}

TEST(Report, JsonFormatParses) {
    const auto r = run({"report", bundled_path(), "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::accept(r.out));
}

TEST(Report, UnwritableOutputIsNotSuccess) {
    const auto r = run({"report", bundled_path(), "-o", "/nonexistent-dir/x/out.md"});
    EXPECT_NE(r.code, 0);
}

TEST(Workspace, EnvironmentVariableUsedWhenPathAbsent) {
    EnvGuard env(bundled_path().c_str());
    const auto r = run({"validate"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0 findings"), std::string::npos);
}

TEST(Workspace, PositionalPathBeatsEnvironment) {
    EnvGuard env(test::fixture_dir("dangling-target").string().c_str());
    EXPECT_EQ(run({"validate", bundled_path()}).code, 0);
    EXPECT_EQ(run({"validate"}).code, 1);
}

TEST(Workspace, NoPathAndNoEnvironmentIsUsageError) {
    EnvGuard env(nullptr);
    EXPECT_EQ(run({"validate"}).code, 3);
}

TEST(Usage, BadInvocationsExitThree) {
    EXPECT_EQ(run({}).code, 3);
    EXPECT_EQ(run({"frobnicate"}).code, 3);
    EXPECT_EQ(run({"assess", bundled_path(), "--format", "yaml"}).code, 3);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Determinism, RepeatedRunsAreIdentical) {
    const std::vector<std::vector<std::string>> commands = {
        {"validate", bundled_path(), "--format", "json"},
        {"assess", bundled_path(), "--format", "json"},
        {"what-if", bundled_path(), "--disable", "red_teaming_tools", "--format", "json"},
        {"prioritize", bundled_path(), "--format", "json"},
        {"graph", bundled_path(), "--format", "json"},
    };
    for (const auto& c : commands) {
        const auto a = run(c);
        const auto b = run(c);
        EXPECT_EQ(a.out, b.out) << c[0];
        EXPECT_TRUE(json::accept(a.out)) << c[0];
    }
    static const std::regex ts(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)");
    const auto r1 = std::regex_replace(run({"report", bundled_path()}).out, ts, "T");
    const auto r2 = std::regex_replace(run({"report", bundled_path()}).out, ts, "T");
    EXPECT_EQ(r1, r2);
}
