#include "support.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>

using namespace gpd;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(GPD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return std::string(GPD_FIXTURES) + "/" + name; }

std::set<std::pair<int, std::string>> segments_of(const json& j) {
    std::set<std::pair<int, std::string>> out;
    for (const auto& e : j.at("entries")) out.emplace(e.at("b").get<int>(), e.at("d").dump());
    return out;
}

}  // namespace

TEST(Cli, TwoPointDiagram) {
    auto r = run("gpd " + fixture("two_point.json"));
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("entries").size(), 2u);
    EXPECT_EQ(segments_of(j), (std::set<std::pair<int, std::string>>{{1, "2"}, {1, "\"inf\""}}));
    auto g = diagram_from_json(j);
    EXPECT_NEAR(gpd::testing::cosine(g.at({1, 2}), (Vec(2) << 1, -1).finished()), 1.0, 1e-12);
}

TEST(Cli, LaplacianMethodMatchesOffDiagonal) {
    auto bd = diagram_from_json(json::parse(run("gpd -q 1 " + fixture("worked_filtration.json")).out));
    auto r = run("gpd -q 1 --method laplacian " + fixture("worked_filtration.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_LE(max_residual(bd, diagram_from_json(json::parse(r.out)), true), kCheckTol);
}

TEST(Cli, DegreeOneOfWorkedFiltration) {
    auto r = run("gpd --degree 1 " + fixture("worked_filtration.json"));
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(segments_of(j), (std::set<std::pair<int, std::string>>{{3, "3"}, {6, "7"}}));
    EXPECT_EQ(j.at("labels"), json({"ab", "ac", "bc", "bd", "cd"}));
}

TEST(Cli, EmptyDegreeGivesEmptyDiagram) {
    auto r = run("gpd -q 4 " + fixture("worked_filtration.json"));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out).at("entries").empty());
}

TEST(Cli, ParseErrorsExitWithTwo) {
    EXPECT_EQ(run("gpd " + fixture("missing_face.json")).code, 2);
    EXPECT_EQ(run("gpd " + fixture("no_such_file.json")).code, 2);
    EXPECT_EQ(run("gpd --method nonsense " + fixture("two_point.json")).code, 2);
    EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, VietorisRipsFromCsv) {
    auto r = run("vr --max-dim 2 " + fixture("equilateral.csv"));
    ASSERT_EQ(r.code, 0);
    auto f = filtration_from_json(json::parse(r.out));
    EXPECT_EQ(f.n(), 2);
    EXPECT_EQ(f.poset().values(), (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(f.complex().count(2), 1);
}

TEST(Cli, PersistenceDiagramMethodsAgree) {
    auto r = run("pd -q 0 " + fixture("worked_filtration.json"));
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_TRUE(j.at("agree").get<bool>());
}

TEST(Cli, VerifyPassesOnFiltrations) {
    for (const char* args : {"verify two_point.csv", "verify -q 1 worked_filtration.json", "verify worked_filtration.json", "verify two_point.json"}) {
        std::string a(args);
        const auto space = a.rfind(' ');
        auto r = run(a.substr(0, space + 1) + fixture(a.substr(space + 1)));
        EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
        EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    }
}

TEST(Cli, VerifyPassesOnComputedDiagram) {
    const std::string path = ::testing::TempDir() + "gpd_cli_two_point.json";
    ASSERT_EQ(run("gpd -o " + path + " " + fixture("two_point.json")).code, 0);
    auto r = run("verify " + path);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS treegram-reconstruction"), std::string::npos) << r.out;
}

TEST(Cli, VerifyReportsCorruptedDiagram) {
    auto r = run("verify " + fixture("corrupted_gpd.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("FAIL transversity"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("(1,inf)"), std::string::npos) << r.out;
}

TEST(Cli, TreegramDirections) {
    auto from_f = run("treegram " + fixture("two_point.json"));
    ASSERT_EQ(from_f.code, 0);
    auto t = treegram_from_json(json::parse(from_f.out));
    EXPECT_EQ(t.events.size(), 2u);

    const std::string gpath = ::testing::TempDir() + "gpd_cli_worked.json";
    ASSERT_EQ(run("gpd -o " + gpath + " " + fixture("worked_filtration.json")).code, 0);
    auto from_g = run("treegram --direction from-gpd " + gpath);
    ASSERT_EQ(from_g.code, 0);
    auto from_worked = run("treegram " + fixture("worked_filtration.json"));
    EXPECT_EQ(from_g.out, from_worked.out);

    const std::string tpath = ::testing::TempDir() + "gpd_cli_worked_treegram.json";
    ASSERT_EQ(run("treegram -o " + tpath + " " + fixture("worked_filtration.json")).code, 0);
    auto back = run("treegram --direction to-gpd " + tpath);
    ASSERT_EQ(back.code, 0);
    EXPECT_LE(max_residual(diagram_from_json(json::parse(back.out)),
                           diagram_from_json(json::parse(run("gpd " + fixture("worked_filtration.json")).out))),
              kCheckTol);

    auto um = run("treegram --direction to-ultrametric " + tpath);
    ASSERT_EQ(um.code, 0);
    std::istringstream in(um.out);
    auto nm = read_named_csv(in);
    EXPECT_EQ(nm.names, (std::vector<std::string>{"a", "b", "c", "d"}));
    EXPECT_EQ(nm.m(0, 1), 1.0);
    EXPECT_EQ(nm.m(0, 3), 4.0);
}

TEST(Cli, HarmonicCellsAreVerified) {
    auto r = run("harmonic -q 1 " + fixture("worked_filtration.json"));
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    ASSERT_EQ(j.at("entries").size(), 1u);
    EXPECT_EQ(j.at("entries")[0].at("b"), 6);
    EXPECT_EQ(j.at("entries")[0].at("d"), 7);
    for (const auto& e : j.at("entries")) EXPECT_TRUE(e.at("isomorphism_verified").get<bool>());
}

TEST(Cli, OutputIsByteStable) {
    for (const char* sub : {"gpd -q 1", "pd", "harmonic", "treegram"}) {
        const std::string args = std::string(sub) + " " + fixture("worked_filtration.json");
        auto a = run(args + " --threads 1");
        auto b = run(args + " --threads 4");
        auto c = run(args);
        EXPECT_EQ(a.out, b.out) << sub;
        EXPECT_EQ(a.out, c.out) << sub;
    }
}
