#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <prkit/cli.hpp>
#include <prkit/io.hpp>
#include <prkit/lift.hpp>
#include <sstream>

using namespace prkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string dom(const std::string& name) { return std::string(PRKIT_FIXTURES) + "/domains/" + name + ".json"; }
std::string gra(const std::string& name) { return std::string(PRKIT_FIXTURES) + "/graphs/" + name + ".json"; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("prkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }
};

}  // namespace

TEST(Cli, ValidateDisk) {
  auto r = run({"validate", "--domain", dom("disk")});
  EXPECT_EQ(r.code, 0);
  auto j = r.doc();
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["format"], "prkit/1");
  EXPECT_EQ(j["tool"]["version"], PRKIT_VERSION);
  EXPECT_EQ(j["config"]["subcommand"], "validate");
}

TEST(Cli, ValidationViolationsExitTwo) {
  auto r = run({"validate", "--domain", dom("nodal")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["violations"][0]["tag"], "singular-point");
  auto g = run({"validate", "--graph", gra("path3")});
  EXPECT_EQ(g.code, 2);
  EXPECT_EQ(g.doc()["ok"], false);
}

TEST(Cli, UnknownFlagsAndMissingArgumentsAreRejected) {
  EXPECT_EQ(run({"reeb", "--domain", dom("disk"), "--frobnicate"}).code, 2);
  EXPECT_EQ(run({"reeb"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"validate", "--domain", dom("disk"), "--graph", gra("y")}).code, 2);
  EXPECT_EQ(run({"realize", "--graph", gra("y"), "--mode", "cubist"}).code, 2);
}

TEST(Cli, Version) {
  auto r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(PRKIT_VERSION), std::string::npos);
}

TEST_F(CliFiles, MalformedInputExitsTwoWithLocation) {
  write("broken.json", "{\"format\": \"prkit/1\", ");
  auto r = run({"reeb", "--domain", path("broken.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["error"]["tag"], "parse");
  EXPECT_NE(r.doc()["error"]["message"].get<std::string>().find("line 1"), std::string::npos);

  write("schema.json", R"({"format": "prkit/1", "curves": [], "basepoint": ["0/1", "0/1"]})");
  auto s = run({"reeb", "--domain", path("schema.json")});
  EXPECT_EQ(s.code, 2);
  EXPECT_EQ(s.doc()["error"]["tag"], "schema");
  EXPECT_EQ(s.doc()["error"]["message"].get<std::string>().front(), '/');

  EXPECT_EQ(run({"reeb", "--domain", path("missing.json")}).code, 2);
}

TEST_F(CliFiles, ReebAnnulusRoundTrips) {
  auto r = run({"reeb", "--domain", dom("annulus"), "--out", path("g.json"), "--dot", path("g.dot")});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = read_json_file(path("g.json"));
  EXPECT_EQ(j["vertices"].size(), 4u);
  EXPECT_EQ(j["edges"].size(), 4u);
  EXPECT_EQ(j["config"]["max_level"], 6);
  VDigraph g = graph_from_json(j);
  EXPECT_EQ(graph_to_json(g)["vertices"], j["vertices"]);
  EXPECT_NE(slurp(path("g.dot")).find("digraph"), std::string::npos);
}

TEST_F(CliFiles, ReebIsDeterministic) {
  auto a = run({"reeb", "--domain", dom("lens")});
  auto b = run({"reeb", "--domain", dom("lens")});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CompareWeakly) {
  auto weak = run({"compare", gra("edge"), gra("path3"), "--weak"});
  EXPECT_EQ(weak.code, 0);
  EXPECT_EQ(weak.doc()["verdict"], true);
  auto strict = run({"compare", gra("edge"), gra("path3")});
  EXPECT_EQ(strict.code, 0);
  EXPECT_EQ(strict.doc()["verdict"], false);
}

TEST_F(CliFiles, LiftRoundTripsItsPartition) {
  auto r = run({"lift", "--domain", dom("disk"), "--out", path("lift.json")});
  ASSERT_EQ(r.code, 0);
  auto j = read_json_file(path("lift.json"));
  EXPECT_EQ(j["equations"][0]["text"], "1 - x1^2 - x2^2 - y_{c,1}^2 = 0");
  LiftSpec l = lift_from_json(j);
  EXPECT_EQ(l.assignment.at("c"), "c");
  EXPECT_EQ(l.multiplicity.at("c"), 0);
  auto again = run({"lift", "--domain", dom("disk"), "--partition", path("lift.json")});
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(again.doc()["equations"], j["equations"]);
}

TEST_F(CliFiles, LiftRejectsBadPartition) {
  write("p.json", R"({"assignment": {"outer": "a", "inner": "a"}, "multiplicity": {"a": -1}})");
  auto r = run({"lift", "--domain", dom("annulus"), "--partition", path("p.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.doc()["violations"].empty());
}

TEST_F(CliFiles, RealizeEdge) {
  auto r = run({"realize", "--graph", gra("edge"), "--out", path("d.json"), "--report", path("r.json"), "--svg",
                path("e.svg")});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  auto rep = read_json_file(path("r.json"));
  EXPECT_EQ(rep["verified"], true);
  EXPECT_EQ(rep["config"]["max_degree"], 10);
  EXPECT_EQ(rep["config"]["mode"], "algebraic");
  EXPECT_EQ(rep["tool"]["version"], PRKIT_VERSION);
  DomainSpec d = domain_from_json(read_json_file(path("d.json")));
  EXPECT_TRUE(validate_domain(d).ok());
  auto back = run({"reeb", "--domain", path("d.json"), "--out", path("g.json")});
  ASSERT_EQ(back.code, 0);
  EXPECT_EQ(run({"compare", path("g.json"), gra("edge"), "--weak"}).doc()["verdict"], true);
  auto svg = slurp(path("e.svg"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<!-- {\"config\""), std::string::npos);
}

TEST(Cli, RealizeRejectsInvalidGraphs) {
  auto r = run({"realize", "--graph", gra("extremum3")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["violations"][0]["tag"], "extremum-degree");
  auto p = run({"realize", "--graph", gra("y"), "--eps2", "1/8"});
  EXPECT_EQ(p.code, 2);
  EXPECT_EQ(p.doc()["error"]["tag"], "realize-parameters");
  EXPECT_EQ(run({"realize", "--graph", gra("y"), "--delta", "one"}).code, 2);
  EXPECT_EQ(run({"realize", "--graph", gra("y"), "--mode", "piecewise", "--out", "x.json"}).code, 2);
}

TEST(Cli, RealizePiecewise) {
  auto r = run({"realize", "--graph", gra("eyeglasses"), "--mode", "piecewise"});
  ASSERT_EQ(r.code, 0);
  auto j = r.doc();
  EXPECT_EQ(j["mode"], "piecewise");
  EXPECT_EQ(j["verified"], true);
  EXPECT_EQ(j["fold_inventory"].size(), 4u);
}

TEST(Cli, OracleSuiteIsIndependentOfJobs) {
  auto one = run({"--jobs", "1", "oracle", "--random", "5", "--seed", "11", "--resolution", "512"});
  auto three = run({"--jobs", "3", "oracle", "--random", "5", "--seed", "11", "--resolution", "512"});
  ASSERT_EQ(one.code, 0) << one.out;
  EXPECT_EQ(one.out, three.out);
  EXPECT_EQ(one.doc()["agree"], 5);
}

TEST(Cli, OracleSingleDomain) {
  auto r = run({"oracle", "--domain", dom("annulus"), "--resolution", "512"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["agrees_with_exact"], true);
}

TEST_F(CliFiles, Render) {
  auto r = run({"render", "--domain", dom("lens"), "--overlay", "--svg", path("l.svg"), "--dot", path("l.dot")});
  ASSERT_EQ(r.code, 0) << r.out;
  auto svg = slurp(path("l.svg"));
  EXPECT_NE(svg.find("id=\"curve-"), std::string::npos);
  EXPECT_NE(svg.find("id=\"graph\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"component\""), std::string::npos);
  EXPECT_NE(slurp(path("l.dot")).find("->"), std::string::npos);
  EXPECT_EQ(run({"render", "--embedded", gra("y"), "--svg", path("y.svg")}).code, 0);
  EXPECT_EQ(run({"render", "--domain", dom("lens")}).code, 2);
}
