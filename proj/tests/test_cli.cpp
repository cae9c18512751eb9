#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nl2bt/cli.hpp"

namespace fs = std::filesystem;
using namespace nl2bt::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nl2bt_cli_" + std::to_string(std::random_device{}()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result cli(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
  }

  static void write(const std::string& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CompileWritesXmlAndPrintsForm) {
  Result r = cli({"compile", "go through the gate", "--out", path("m.xml")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "( seq ( gate ) )\n");
  EXPECT_EQ(r.err, "");
  EXPECT_NE(slurp(path("m.xml")).find("<Gate/>"), std::string::npos);
}

TEST_F(Cli, CompileReadsStdin) {
  Result r = cli({"compile", "--out", "-"}, "say hello then find the buoy\n");
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("<Say words=\"hello\"/>\n      <Find val=\"buoy\"/>"), std::string::npos) << r.out;
}

TEST_F(Cli, CompileErrors) {
  EXPECT_EQ(cli({"compile", "", "--out", path("a.xml")}).code, kNoVerbMatch);
  Result r = cli({"compile", "say hi then surface", "--out", path("a.xml")});
  EXPECT_EQ(r.code, kNoVerbMatch);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("clause 2"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("a.xml")));
}

TEST_F(Cli, ParseExitCodes) {
  Result ok = cli({"parse", "( seq ( goal ) )", "--out", path("g.xml")});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_NE(slurp(path("g.xml")).find("<Goal/>"), std::string::npos);
  EXPECT_EQ(cli({"parse", "( seq", "--out", path("x.xml")}).code, kSyntax);
  Result strict = cli({"--strict", "parse", "( seq ( warp ) )", "--out", path("x.xml")});
  EXPECT_EQ(strict.code, kInvalid);
  EXPECT_NE(strict.err.find("unknown-action"), std::string::npos);
  EXPECT_EQ(cli({"parse", "( seq ( warp ) )", "--strict", "--out", path("x.xml")}).code, kInvalid);
  Result lenient = cli({"parse", "( seq ( warp ) )", "--out", path("w.xml")});
  EXPECT_EQ(lenient.code, kOk);
  EXPECT_NE(lenient.err.find("warning"), std::string::npos);
  EXPECT_EQ(cli({"parse", "( seq ( move ( x ( $0 ( 1 ) ) ) ( x ( $1 ( 2 ) ) ) ) )", "--out", path("d.xml")}).code,
            kInvalid);
}

TEST_F(Cli, IoAndConfigErrors) {
  EXPECT_EQ(cli({"parse", "( seq )", "--out", path("missing/dir/x.xml")}).code, kIo);
  EXPECT_EQ(cli({"run", path("nope.xml")}).code, kIo);
  write(path("bad.registry"), "Bad-Name\n");
  EXPECT_EQ(cli({"--registry", path("bad.registry"), "parse", "( seq )", "--out", "-"}).code, kConfig);
  write(path("bad.lexicon"), "[verbs]\nfly = nothing\n");
  EXPECT_EQ(cli({"--lexicon", path("bad.lexicon"), "compile", "fly", "--out", "-"}).code, kConfig);
  EXPECT_NE(cli({"frobnicate"}).code, kOk);
}

TEST_F(Cli, CustomRegistryAndLexicon) {
  write(path("extra.registry"), "grab obj\n");
  write(path("extra.lexicon"), "[verbs]\ngrab = grab\n[params.grab]\n_ = obj\n[fillers]\nthe\n");
  Result r = cli({"--registry", path("extra.registry"), "--lexicon", path("extra.lexicon"), "--strict",
                  "compile", "grab the wrench", "--out", "-"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("<Grab obj=\"wrench\"/>"), std::string::npos) << r.out;
}

TEST_F(Cli, GenerateEvalRoundTrip) {
  Result g = cli({"generate", "--train", "40", "--test", "10", "--seed", "7", "--out", path("c")});
  ASSERT_EQ(g.code, kOk) << g.err;
  std::string train = slurp(path("c/train.tsv"));
  EXPECT_EQ(std::count(train.begin(), train.end(), '\n'), 40);
  EXPECT_NE(g.out.find("pairs=10"), std::string::npos);

  Result e = cli({"eval", "--corpus", path("c/test.tsv"), "--out", path("report.tsv")});
  EXPECT_EQ(e.code, kOk);
  EXPECT_NE(e.out.find("accuracy 1.000"), std::string::npos) << e.out;
  std::string report = slurp(path("report.tsv"));
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 10);

  write(path("crippled.lexicon"), "[verbs]\nsay = say\n[params.say]\n_ = words*\n");
  Result c = cli({"--lexicon", path("crippled.lexicon"), "eval", "--corpus", path("c/test.tsv")});
  EXPECT_EQ(c.code, kFailed);
  EXPECT_EQ(cli({"--lexicon", path("crippled.lexicon"), "eval", "--corpus", path("c/test.tsv"),
                 "--threshold", "0"})
                .code,
            kOk);

  write(path("broken.tsv"), "no tab\n");
  EXPECT_EQ(cli({"eval", "--corpus", path("broken.tsv")}).code, kSyntax);
}

TEST_F(Cli, GenerateIsReproducible) {
  cli({"generate", "--train", "50", "--test", "5", "--seed", "3", "--out", path("a")});
  cli({"generate", "--train", "50", "--test", "5", "--seed", "3", "--out", path("b")});
  EXPECT_EQ(slurp(path("a/train.tsv")), slurp(path("b/train.tsv")));
  EXPECT_EQ(slurp(path("a/test.tsv")), slurp(path("b/test.tsv")));
}

TEST_F(Cli, RunPrintsTrace) {
  cli({"parse", "( seq ( goal ) ( move ( x ( $0 ( 1.5 ) ) ) ) )", "--out", path("m.xml")});
  Result r = cli({"run", path("m.xml")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "0\tgoal\t\tSUCCESS\n1\tmove\tx=1.5\tSUCCESS\n");
  EXPECT_EQ(r.err, "mission SUCCESS\n");

  cli({"parse", "( seq ( move ( x ( $0 ( far ) ) ) ) ( goal ) )", "--out", path("f.xml")});
  Result failing = cli({"run", path("f.xml")});
  EXPECT_EQ(failing.code, kFailed);
  EXPECT_EQ(failing.out, "0\tmove\tx=far\tFAILURE\n");
  EXPECT_EQ(cli({"run", "-"}, "<root>").code, kSyntax);
}

TEST_F(Cli, CompileOutputPipesIntoRun) {
  for (const char* u : {"go through the gate", "say hello then find the buoy",
                        "move x 1 y -2 then level off at 3 and reach the goal"}) {
    Result c = cli({"compile", u, "--out", "-"});
    ASSERT_EQ(c.code, kOk) << u;
    Result r = cli({"run", "-"}, c.out);
    EXPECT_EQ(r.code, kOk) << u << "\n" << r.err;
    EXPECT_EQ(r.err, "mission SUCCESS\n");
  }
}

TEST_F(Cli, ReplWritesNumberedMissions) {
  Result r = cli({"repl", "--out", path("r")}, "reach the goal\n\nsurface\nsay hi\n");
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "( seq ( goal ) )\t" + path("r/mission_1.xml") + "\n" +
                       "( seq ( say ( words ( $0 ( hi ) ) ) ) )\t" + path("r/mission_2.xml") + "\n");
  EXPECT_NE(r.err.find("matches no action"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("r/mission_2.xml")));
  EXPECT_FALSE(fs::exists(path("r/mission_3.xml")));
}
