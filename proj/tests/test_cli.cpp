#include "nilorb/cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace nilorb;
using cli::JobSpec;

namespace {

struct CliRun {
  std::string out;
  int code = -1;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(NILORB_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

JobSpec job(std::int64_t p, std::string q) {
  JobSpec s;
  s.p = p;
  s.q = std::move(q);
  return s;
}

}  // namespace

TEST(ParseForm, BothGrammars) {
  auto ctx = PadicCtx::make(7);
  auto a = cli::parse_form("diag:1,r,w,rw", *ctx);
  EXPECT_EQ(a.degree, 4);
  EXPECT_EQ(a.cls, witt_of_diagonal({SquareClass::One, SquareClass::Rho, SquareClass::Pi, SquareClass::RhoPi}, *ctx));
  auto b = cli::parse_form("witt:9:U1.ZERO", *ctx);
  EXPECT_EQ(b, (QFormClass{9, WittClass{ResWittClass::U1, ResWittClass::Zero}}));
  EXPECT_THROW(cli::parse_form("witt:1:U1RHO.U1RHO", *ctx), cli::BadInput);
  EXPECT_THROW(cli::parse_form("diag:1,x", *ctx), cli::BadInput);
  EXPECT_THROW(cli::parse_form("witt:2:U1", *ctx), cli::BadInput);
  EXPECT_THROW(cli::parse_form("1,r", *ctx), cli::BadInput);
  EXPECT_THROW(cli::parse_partition("2,1"), cli::BadInput);
  EXPECT_THROW(cli::parse_partition("3,a"), cli::BadInput);
}

TEST(CmdCount, ExampleRowAndVeryEvenDoubling) {
  JobSpec s = job(5, "witt:9:U1.ZERO");
  s.lambda = "5,3,1";
  s.check = true;
  auto r = cli::cmd_count(s);
  EXPECT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.out["rows"].size(), 1u);
  EXPECT_EQ(r.out["rows"][0]["count"], 10);
  EXPECT_EQ(r.out["rows"][0]["brute"], 10);

  JobSpec v = job(7, "witt:4:ZERO.ZERO");
  auto rv = cli::cmd_count(v);
  bool seen = false;
  for (const auto& row : rv.out["rows"])
    if (row["lambda"] == Json::array({2, 2})) {
      EXPECT_EQ(row["count"], 2);
      EXPECT_EQ(row["closed"], 1);
      seen = true;
    }
  EXPECT_TRUE(seen);
  EXPECT_EQ(rv.out["totals"]["SO"].get<int>(), rv.out["totals"]["O"].get<int>() + 1);
}

TEST(CmdCount, RejectsImpossibleForm) { EXPECT_THROW(cli::cmd_count(job(5, "witt:1:U1RHO.U1RHO")), cli::BadInput); }

TEST(CmdEnumerate, TenLabelsForExample) {
  JobSpec s = job(5, "witt:9:U1.ZERO");
  s.lambda = "5,3,1";
  auto r = cli::cmd_enumerate(s);
  EXPECT_EQ(r.out["count"], 10);
  for (const auto& l : r.out["labels"]) EXPECT_EQ(l["lambda"], Json::array({5, 3, 1}));
}

TEST(CmdRepresent, VeryEvenSecondTag) {
  JobSpec s = job(7, "witt:4:ZERO.ZERO");
  s.lambda = "2,2";
  s.ve = "II";
  auto r = cli::cmd_represent(s);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out["verify"]["matches_label"].get<bool>());
  // X = X_{1,-2}: v_1 <- w_2 with coefficient 1 and v_2 <- w_1 with -1.
  EXPECT_EQ(r.out["triple"]["X"], Json::parse(R"([[0,3,0,"1"],[1,2,0,"-1"]])"));
}

TEST(CmdRepresent, SabotageIsNeverEmitted) {
  JobSpec s = job(7, "witt:3:U1.ZERO");
  s.lambda = "3";
  s.qtup = "witt:1:U1.ZERO";
  auto good = cli::cmd_represent(s);
  EXPECT_EQ(good.exit_code, 0);
  auto bad = cli::cmd_represent(s, true);
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_FALSE(bad.out.contains("triple"));
}

TEST(CmdRepresent, RejectsLabelsOutsideParameterSet) {
  JobSpec s = job(7, "witt:4:ZERO.ZERO");
  s.lambda = "2,2";
  EXPECT_THROW(cli::cmd_represent(s), cli::BadInput);  // missing tag
  s.ve = "III";
  EXPECT_THROW(cli::cmd_represent(s), cli::BadInput);
  JobSpec t = job(7, "witt:3:U1.ZERO");
  t.lambda = "3";
  t.qtup = "witt:1:URHO.ZERO";
  EXPECT_THROW(cli::cmd_represent(t), cli::BadInput);  // wrong Witt sum
}

TEST(CmdFacet, VeryEvenDimensionOne) {
  JobSpec s = job(7, "witt:4:ZERO.ZERO");
  s.lambda = "2,2";
  s.ve = "I";
  auto r = cli::cmd_facet(s);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out["facet"]["dim"], 1);
  EXPECT_EQ(r.out["dims"], Json::parse(R"({"facet":1,"gamma":1,"theorem":1,"split_rank":1})"));
  EXPECT_EQ(r.out["facet"]["point"], Json::parse(R"(["0","0"])"));
}

TEST(CmdFacet, HalfIntegralPointForUniformizerKernel) {
  JobSpec s = job(7, "witt:3:ZERO.U1");
  s.lambda = "3";
  s.qtup = "witt:1:ZERO.U1";
  auto r = cli::cmd_facet(s);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out["facet"]["point"], Json::parse(R"(["-1/2"])"));
}

TEST(CmdSelftest, SmallRunsAndSabotage) {
  auto r = cli::cmd_selftest({5, 7}, 1);
  EXPECT_EQ(r.exit_code, 0);
  for (const auto& c : r.out["checks"]) EXPECT_EQ(c["representatives"]["cases"], 4);
  auto s = cli::cmd_selftest({5}, 2, true);
  EXPECT_EQ(s.exit_code, 1);
  EXPECT_FALSE(s.out["passed"].get<bool>());
  EXPECT_THROW(cli::cmd_selftest({4}, 2), cli::BadInput);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("count --p 5 --q witt:9:U1.ZERO --lambda 5,3,1 --check").code, 0);
  EXPECT_EQ(run_cli("count --p 5 --q witt:1:U1RHO.U1RHO").code, 2);
  EXPECT_EQ(run_cli("count --p 9 --q witt:1:U1.ZERO").code, 2);
  EXPECT_EQ(run_cli("count --p 5 --n 3 --q witt:1:U1.ZERO").code, 2);
  EXPECT_EQ(run_cli("count --p 5 --q witt:1:U1.ZERO --group SP").code, 2);
  EXPECT_EQ(run_cli("count --p 5 --q witt:1:U1.ZERO --precision 8").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("selftest --p 5 --n 2 --sabotage").code, 1);
  EXPECT_EQ(run_cli("selftest --p 5,7 --n 3").code, 0);
}

TEST(Binary, OutputIsDeterministicJson) {
  const std::string args = "represent --p 5 --q witt:9:U1.ZERO --lambda 5,3,1 --qtup 'witt:1:U1.ZERO;witt:1:ZERO.U1;witt:1:ZERO.U1'";
  CliRun a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  Json j = Json::parse(a.out);
  EXPECT_TRUE(j["verify"]["matches_label"].get<bool>());
  EXPECT_FALSE(j["warnings"].empty());  // p = 5 is below 3(h - 1) for n = 9
  CliRun compact = run_cli(args + " --json-indent -1");
  EXPECT_EQ(Json::parse(compact.out), j);
  EXPECT_EQ(compact.out.find('\n'), compact.out.size() - 1);
}
