#include <gtest/gtest.h>

#include <json.hpp>

#include <fstream>
#include <string>

#include "respo/ts_io.hpp"
#include "support/oracles.hpp"

using respo::testing::CommandResult;
using respo::testing::run_command;

namespace {

std::string cli() { return RESPO_CLI_PATH; }
std::string model(const std::string& name) {
  return std::string(RESPO_MODELS_DIR) + "/" + name;
}

nlohmann::ordered_json analyze_json(const std::string& args) {
  CommandResult r = run_command(cli() + " analyze " + args + " --output json --no-timing");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  return nlohmann::ordered_json::parse(r.output);
}

}  // namespace

TEST(Cli, JsonReportSchema) {
  nlohmann::ordered_json j = analyze_json(model("trainstation.ts"));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::vector<std::string> expect{"actors",     "mode",       "algorithm",
                                  "gamma_empty", "gamma_full", "coalitions_evaluated",
                                  "wall_ms",    "warnings"};
  EXPECT_EQ(keys, expect);
  EXPECT_EQ(j["mode"], "forward");
  EXPECT_EQ(j["algorithm"], "exact");
  EXPECT_EQ(j["gamma_empty"], 0);
  EXPECT_EQ(j["gamma_full"], 1);
  EXPECT_EQ(j["coalitions_evaluated"], 8);
  EXPECT_EQ(j["wall_ms"], 0.0);
  EXPECT_TRUE(j["warnings"].empty());

  EXPECT_EQ(j["actors"]["A"]["value"], "2/3");
  EXPECT_EQ(j["actors"]["A"]["value_num"], "2");
  EXPECT_EQ(j["actors"]["A"]["value_den"], "3");
  EXPECT_TRUE(j["actors"]["A"]["witness"].empty());
  EXPECT_EQ(j["actors"]["B"]["value"], "1/6");
  EXPECT_EQ(j["actors"]["B"]["witness"], nlohmann::ordered_json::array({"C"}));
  EXPECT_EQ(j["actors"]["C"]["witness"], nlohmann::ordered_json::array({"B"}));
}

TEST(Cli, ExactOutputIsByteStableAcrossRunsAndThreads) {
  std::string base = cli() + " analyze " + model("trainstation.ts") +
                     " --output json --no-timing";
  CommandResult a = run_command(base + " --threads 1");
  CommandResult b = run_command(base + " --threads 8");
  CommandResult c = run_command(base + " --threads 1");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.output, c.output);
}

TEST(Cli, SampledOutputDependsOnlyOnSamplesAndSeed) {
  std::string base = cli() + " analyze " + model("trainstation.ts") +
                     " --algorithm sample --samples 400 --seed 11 --output json" +
                     " --no-timing";
  CommandResult a = run_command(base + " --threads 7");
  CommandResult b = run_command(base + " --threads 2");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
  CommandResult c = run_command(cli() + " analyze " + model("trainstation.ts") +
                                " --algorithm sample --samples 400 --seed 12" +
                                " --output json --no-timing");
  EXPECT_NE(a.output, c.output);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(a.output);
  EXPECT_EQ(j["actors"]["A"]["samples"], 400);
  EXPECT_TRUE(j["actors"]["A"].contains("mean"));
  EXPECT_TRUE(j["actors"]["A"].contains("half_width"));
}

TEST(Cli, TableOutputMentionsEveryActor) {
  CommandResult r = run_command(cli() + " analyze " + model("trainstation.ts"));
  EXPECT_EQ(r.exit_code, 0);
  for (const char* needle : {"A", "B", "C", "2/3", "1/6", "switches with"})
    EXPECT_NE(r.output.find(needle), std::string::npos) << needle;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_command(cli() + " --help").exit_code, 0);
  EXPECT_EQ(run_command(cli() + " analyze --help").exit_code, 0);
  EXPECT_EQ(run_command(cli() + " bogus 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_command(cli() + " analyze /no/such/file.rml 2>/dev/null").exit_code, 2);
  // A syntax error in the model is an input problem, not a resource limit.
  std::string broken = ::testing::TempDir() + "broken.rml";
  std::ofstream(broken) << "lightning = ; module M x:[0..1] init 0; endmodule";
  EXPECT_EQ(run_command(cli() + " analyze " + broken + " 2>/dev/null").exit_code, 2);
}

TEST(Cli, StateCapFromFlagAndEnvironment) {
  std::string counters = model("counters.rml");
  EXPECT_EQ(run_command(cli() + " analyze " + counters +
                        " --property \"x = 5 & y = 5\" --max-states 5 2>/dev/null")
                .exit_code,
            3);
  EXPECT_EQ(run_command("RESPO_MAX_STATES=5 " + cli() + " analyze " + counters +
                        " --property \"x = 5 & y = 5\" 2>/dev/null")
                .exit_code,
            3);
  // The flag wins over the environment.
  EXPECT_EQ(run_command("RESPO_MAX_STATES=5 " + cli() + " analyze " + counters +
                        " --property \"x = 5 & y = 5\" --max-states 100000" +
                        " --output json 2>/dev/null")
                .exit_code,
            0);
}

TEST(Cli, ActorCapExitCode) {
  EXPECT_EQ(run_command(cli() + " analyze " + model("trainstation.ts") +
                        " --max-actors 2 2>/dev/null")
                .exit_code,
            3);
}

TEST(Cli, PropertyOverrideWarnsOnConflict) {
  nlohmann::ordered_json j =
      analyze_json(model("counters.rml") + " --property \"x = 5 & y = 5\"");
  ASSERT_FALSE(j["warnings"].empty());
  bool mentioned = false;
  for (const auto& w : j["warnings"])
    if (w.get<std::string>().find("propert") != std::string::npos) mentioned = true;
  EXPECT_TRUE(mentioned);
}

TEST(Cli, PropertyRejectedForExchangeInput) {
  CommandResult r = run_command(cli() + " analyze " + model("trainstation.ts") +
                                " --property \"true\" 2>&1");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, BackwardModeNeedsAReachableBadState) {
  CommandResult r =
      run_command(cli() + " analyze " + model("counters.rml") + " --mode backward 2>&1");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, OutFlagWritesTheReportToAFile) {
  std::string out = ::testing::TempDir() + "report.json";
  CommandResult r = run_command(cli() + " analyze " + model("trainstation.ts") +
                                " --output json --no-timing --out " + out);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.output.empty());
  std::ifstream in(out);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
  EXPECT_EQ(j["actors"]["A"]["value"], "2/3");
}

TEST(Cli, TransformSchedOutputIsAValidProgram) {
  std::string out = ::testing::TempDir() + "sched.rml";
  CommandResult t = run_command(cli() + " transform " + model("counters.rml") +
                                " --to sched --out " + out);
  EXPECT_EQ(t.exit_code, 0) << t.output;
  CommandResult c = run_command(cli() + " check " + out);
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_NE(c.output.find("program: ok"), std::string::npos);
  EXPECT_NE(c.output.find("__sched"), std::string::npos);
}

TEST(Cli, TransformActionOutputIsAnImportableExchangeFile) {
  std::string out = ::testing::TempDir() + "separated.ts";
  CommandResult t = run_command(cli() + " transform " + model("puzzlebox.rml") +
                                " --to action --clamp --out " + out);
  ASSERT_EQ(t.exit_code, 0) << t.output;
  CommandResult c = run_command(cli() + " check " + out);
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_NE(c.output.find("exchange model: ok"), std::string::npos);
  EXPECT_NE(c.output.find("3 actor(s)"), std::string::npos);

  // The emitted file analyzes to the same values as the direct pipeline.
  nlohmann::ordered_json j = analyze_json(out);
  EXPECT_EQ(j["actors"]["btn1"]["value"], "1/2");
  EXPECT_EQ(j["actors"]["btn2"]["value"], "0");
  EXPECT_EQ(j["actors"]["btn3"]["value"], "1/2");
}

TEST(Cli, GenPipesIntoCheckAndImport) {
  CommandResult g1 = run_command(cli() + " gen --family linear --n 10 --m 2");
  CommandResult g2 = run_command(cli() + " gen --family linear --n 10 --m 2");
  ASSERT_EQ(g1.exit_code, 0);
  EXPECT_EQ(g1.output, g2.output);
  respo::ImportedTs ts = respo::import_ts_string(g1.output);
  EXPECT_EQ(ts.lts.num_states, 11u);
  ASSERT_TRUE(ts.signature.has_value());
  EXPECT_EQ(ts.signature->actor_count(), 2);

  std::string out = ::testing::TempDir() + "gen.ts";
  CommandResult g3 = run_command(cli() + " gen --family random --n 60 --m 3 --seed 9" +
                                 " --out " + out);
  ASSERT_EQ(g3.exit_code, 0);
  CommandResult c = run_command(cli() + " check " + out);
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_NE(c.output.find("exchange model: ok"), std::string::npos);

  CommandResult bad = run_command(cli() + " gen --family pyramid --n 10 --m 2 2>/dev/null");
  EXPECT_EQ(bad.exit_code, 2);
}

TEST(Cli, ValueActorsOnPrograms) {
  nlohmann::ordered_json j = analyze_json(model("sweden.rml") + " --actors value:t");
  EXPECT_EQ(j["actors"]["t=8"]["value"], "7/12");
  EXPECT_EQ(j["actors"]["t=11"]["value"], "0");
  EXPECT_EQ(j["actors"].size(), 13u);
}

TEST(Cli, ManualActorsFromFile) {
  std::string sigfile = ::testing::TempDir() + "split.sig";
  std::ofstream(sigfile) << "pending: w = 0\nrest: w > 0\n";
  nlohmann::ordered_json j =
      analyze_json(model("window.rml") + " --actors manual:" + sigfile);
  ASSERT_EQ(j["actors"].size(), 2u);
  EXPECT_TRUE(j["actors"].contains("pending"));
  EXPECT_TRUE(j["actors"].contains("rest"));
}
