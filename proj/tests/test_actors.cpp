#include "respo/actors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "respo/errors.hpp"
#include "respo/parser.hpp"
#include "respo/responsibility.hpp"
#include "respo/rng.hpp"
#include "support/oracles.hpp"

using namespace respo;

namespace {

std::string read_model(const std::string& name) {
  std::ifstream in(std::string(RESPO_MODELS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTwoCounters = R"(
lightning = false;
module A
  x : [0..5] init 0;
  [] x < 5 -> x := x + 1;
  [reset] x = 5 -> x := 0;
endmodule
module B
  y : [0..5] init 0;
  [] y < 5 -> y := y + 1;
  [reset] y = 5 -> y := 0;
endmodule
)";

const Decl& find_decl(const Module& m, const std::string& name) {
  for (const Decl& d : m.decls)
    if (d.name == name) return d;
  throw std::logic_error("no declaration " + name);
}

const Module& find_module(const Program& p, const std::string& name) {
  for (const Module& m : p.modules)
    if (m.name == name) return m;
  throw std::logic_error("no module " + name);
}

// Four-state system: one state with three actions to three distinct targets.
Lts fan_out_lts(std::vector<std::string> action_names, bool last_target_bad) {
  Lts lts;
  lts.num_states = 4;
  lts.initial = 0;
  lts.is_bad = {0, 0, 0, last_target_bad ? uint8_t{1} : uint8_t{0}};
  lts.actions = action_names;
  lts.action_display = action_names;
  std::vector<RawEdge> edges{{0, 1, 0}, {0, 2, 1}, {0, 3, 2}};
  finalize_lts(lts, std::move(edges));
  return lts;
}

}  // namespace

TEST(Guards, ModuleGuardIsTheLocalDisjunction) {
  Program p = parse_program(kTwoCounters);
  BoolPtr ga = module_guard(p, 0);
  BoolPtr gb = module_guard(p, 1);
  for (long long x = 0; x <= 5; ++x)
    for (long long y = 0; y <= 5; ++y) {
      std::vector<long long> s{x, y};
      EXPECT_EQ(eval_bool(*ga, s), x < 5);
      EXPECT_EQ(eval_bool(*gb, s), y < 5);
    }
}

TEST(Guards, ActionGuardConjoinsAcrossModules) {
  Program p = parse_program(kTwoCounters);
  BoolPtr gr = action_guard(p, "reset");
  for (long long x = 0; x <= 5; ++x)
    for (long long y = 0; y <= 5; ++y) {
      std::vector<long long> s{x, y};
      EXPECT_EQ(eval_bool(*gr, s), x == 5 && y == 5);
    }
}

TEST(Guards, ModuleWithoutLocalCommandsIsFalse) {
  Program p = parse_program(read_model("window.rml"));
  BoolPtr gw = module_guard(p, 0);  // Window only holds synchronized actions
  std::vector<long long> s{0, 0, 0, 0};
  EXPECT_FALSE(eval_bool(*gw, s));
  EXPECT_EQ(to_string(*gw), "false");
}

TEST(Scheduler, TwoCounterShape) {
  Program p = parse_program(kTwoCounters);
  SchedulerProgram sp = with_scheduler(p);
  std::vector<std::string> expect_names{"scheduler", "A", "B", "reset"};
  EXPECT_EQ(sp.active_names, expect_names);

  const Module& sched = find_module(sp.program, "__sched");
  const Decl& active = find_decl(sched, "active");
  EXPECT_EQ(active.lo, 0);
  EXPECT_EQ(active.hi, 3);
  EXPECT_EQ(active.init, 0);
  ASSERT_EQ(sched.commands.size(), 6u);
  std::multiset<std::string> names;
  for (const Command& c : sched.commands) names.insert(c.action);
  std::multiset<std::string> expect{"__choose_A", "__act_A", "__choose_B",
                                    "__act_B",    "__choose_reset", "reset"};
  EXPECT_EQ(names, expect);

  // Local commands are relabelled to the module turn action; reset stays.
  const Module& a = find_module(sp.program, "A");
  EXPECT_EQ(a.commands[0].action, "__act_A");
  EXPECT_EQ(a.commands[1].action, "reset");
}

TEST(Scheduler, OneModuleWithoutSyncActions) {
  Program p = parse_program(
      "lightning = false; module M x:[0..1] init 0; [] x < 1 -> x := x + 1; endmodule");
  SchedulerProgram sp = with_scheduler(p);
  const Module& sched = find_module(sp.program, "__sched");
  EXPECT_EQ(find_decl(sched, "active").hi, 1);
  EXPECT_EQ(sched.commands.size(), 2u);
}

TEST(Scheduler, WindowActiveRange) {
  SchedulerProgram sp = with_scheduler(parse_program(read_model("window.rml")));
  EXPECT_EQ(find_decl(find_module(sp.program, "__sched"), "active").hi, 7);
  EXPECT_EQ(sp.active_names.size(), 8u);
}

TEST(Scheduler, NameClashes) {
  auto expect_clash = [](const std::string& text) {
    try {
      with_scheduler(parse_program(text));
      FAIL() << "expected a failure for: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind, ErrorKind::name_clash);
    }
  };
  expect_clash("lightning = false; module M active:[0..1] init 0; endmodule");
  expect_clash(
      "lightning = false;"
      " module A x:[0..1] init 0; [__choose_A] x = 0 -> ; [] x = 0 -> ; endmodule"
      " module B y:[0..1] init 0; [__choose_A] y = 0 -> ; endmodule");
}

TEST(Scheduler, PreservesBadReachability) {
  Rng rng(6001);
  for (int i = 0; i < 150; ++i) {
    Program p = parse_program(respo::testing::random_program_text(rng));
    BuildOptions opts;
    opts.clamp = true;
    Lts orig = build_ts(p, opts);
    Lts sched = build_ts(with_scheduler(p).program, opts);
    EXPECT_EQ(!orig.bad.empty(), !sched.bad.empty()) << to_source(p);
  }
}

TEST(Scheduler, RunProjectionIsAnOriginalRun) {
  Program p = parse_program(read_model("window.rml"));
  Lts orig = build_ts(p);
  SchedulerProgram sp = with_scheduler(p);
  Lts sched = build_ts(sp.program);
  auto cex = find_counterexample(sched);
  ASSERT_TRUE(cex.has_value());

  int active_var = -1;
  for (uint32_t v = 0; v < sched.num_vars; ++v)
    if (sched.var_names[v] == "active") active_var = static_cast<int>(v);
  ASSERT_GE(active_var, 0);

  std::vector<int64_t> projected;
  for (uint32_t s : cex->states) {
    auto vals = sched.state(s);
    if (vals[active_var] != 0) continue;
    std::vector<long long> orig_vals;
    for (uint32_t v = 0; v < sched.num_vars; ++v)
      if (static_cast<int>(v) != active_var) orig_vals.push_back(vals[v]);
    projected.push_back(orig.find_state(orig_vals));
  }
  ASSERT_GE(projected.size(), 2u);
  EXPECT_EQ(projected.front(), orig.initial);
  for (int64_t s : projected) ASSERT_GE(s, 0);
  for (size_t i = 0; i + 1 < projected.size(); ++i) {
    auto succ = orig.successors(static_cast<uint32_t>(projected[i]));
    EXPECT_TRUE(std::find(succ.begin(), succ.end(),
                          static_cast<uint32_t>(projected[i + 1])) != succ.end());
  }
  EXPECT_TRUE(orig.is_bad[static_cast<uint32_t>(projected.back())]);
}

TEST(Scheduler, ActiveAlternatesAlongEveryEdge) {
  Program p = parse_program(read_model("window.rml"));
  Lts sched = build_ts(with_scheduler(p).program);
  int active_var = -1;
  for (uint32_t v = 0; v < sched.num_vars; ++v)
    if (sched.var_names[v] == "active") active_var = static_cast<int>(v);
  ASSERT_GE(active_var, 0);
  for (uint32_t u = 0; u < sched.num_states; ++u) {
    long long ua = sched.state(u)[active_var];
    for (uint32_t k = sched.row_off[u]; k < sched.row_off[u + 1]; ++k) {
      uint32_t v = sched.col[k];
      if (sched.actions[sched.edge_action[k]] == kIdleAction) {
        EXPECT_EQ(u, v);
        continue;
      }
      long long va = sched.state(v)[active_var];
      if (ua == 0) {
        EXPECT_GT(va, 0);
        // Choosing never changes the original variables.
        for (uint32_t w = 0; w < sched.num_vars; ++w)
          if (static_cast<int>(w) != active_var)
            EXPECT_EQ(sched.state(u)[w], sched.state(v)[w]);
      } else {
        EXPECT_EQ(va, 0);
      }
    }
  }
}

TEST(Signatures, ModuleSignatureWindow) {
  Program p = parse_program(read_model("window.rml"));
  SchedulerProgram sp = with_scheduler(p);
  Lts lts = build_ts(sp.program);
  std::vector<std::string> warnings;
  ResponsibilitySignature sig = module_signature(sp, lts, &warnings);
  std::vector<std::string> expect{"scheduler", "Rebeca",   "Ada",     "Julia",
                                  "install",   "a_throws", "j_throws"};
  EXPECT_EQ(sig.actor_names, expect);
  EXPECT_TRUE(sig.aux_states.empty());
  EXPECT_TRUE(sig.adv_states.empty());
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("Window"), std::string::npos);
  size_t covered = 0;
  for (const auto& st : sig.actor_states) covered += st.size();
  EXPECT_EQ(covered, lts.num_states);
}

TEST(Signatures, ModuleSignatureDropsUnreachableSyncActor) {
  Program p = parse_program(
      "lightning = false;"
      " module A x:[0..2] init 0; [] x < 2 -> x := x + 1; [reset] x = 0 & x = 1 -> ;"
      " endmodule"
      " module B y:[0..2] init 0; [] y < 2 -> y := y + 1; [reset] y = 0 -> ;"
      " endmodule");
  SchedulerProgram sp = with_scheduler(p);
  Lts lts = build_ts(sp.program);
  std::vector<std::string> warnings;
  ResponsibilitySignature sig = module_signature(sp, lts, &warnings);
  std::vector<std::string> expect{"scheduler", "A", "B"};
  EXPECT_EQ(sig.actor_names, expect);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("reset"), std::string::npos);
}

TEST(Signatures, ValueSignatureSweden) {
  Lts lts = build_ts(parse_program(read_model("sweden.rml")));
  ResponsibilitySignature sig = value_signature(lts, {"t"});
  ASSERT_EQ(sig.actor_count(), 13);
  for (int i = 0; i < 13; ++i)
    EXPECT_EQ(sig.actor_names[i], "t=" + std::to_string(8 + i));
  EXPECT_TRUE(sig.aux_states.empty());
  EXPECT_TRUE(sig.adv_states.empty());
}

TEST(Signatures, ValueSignatureUnknownVariable) {
  Lts lts = build_ts(parse_program(read_model("sweden.rml")));
  try {
    value_signature(lts, {"t", "nope"});
    FAIL() << "expected a failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, ErrorKind::unknown_variable);
  }
}

TEST(Signatures, ValueSignatureOnActiveMatchesModuleSignature) {
  Program p = parse_program(kTwoCounters);
  SchedulerProgram sp = with_scheduler(p);
  Lts lts = build_ts(sp.program);
  ResponsibilitySignature by_value = value_signature(lts, {"active"});
  ResponsibilitySignature by_module = module_signature(sp, lts);
  ASSERT_EQ(by_value.actor_count(), by_module.actor_count());
  EXPECT_EQ(by_value.actor_states, by_module.actor_states);
  EXPECT_EQ(by_value.actor_names[0], "active=0");
  EXPECT_EQ(by_module.actor_names[0], "scheduler");
}

TEST(Signatures, ValueSignatureOverAllVariablesIsSingletons) {
  Lts lts = build_ts(parse_program(kTwoCounters));
  ResponsibilitySignature sig = value_signature(lts, {"x", "y"});
  ASSERT_EQ(sig.actor_count(), 36);
  for (const auto& st : sig.actor_states) EXPECT_EQ(st.size(), 1u);
}

TEST(Separation, FanOutBlockShape) {
  Lts lts = fan_out_lts({"a", "b", "c"}, /*last_target_bad=*/true);
  SeparatedSystem sep = action_separate(lts);
  EXPECT_EQ(sep.orig_states, 4u);
  ASSERT_EQ(sep.degree(0), 3u);
  // Block of the fanned-out state: three ?-states, three !-states, one X.
  EXPECT_EQ(sep.x_state(0) - sep.base[0], 6u);
  uint32_t block_edges = 0;
  for (uint32_t s = sep.base[0]; s <= sep.x_state(0); ++s)
    block_edges += static_cast<uint32_t>(sep.lts.successors(s).size());
  EXPECT_EQ(block_edges, 15u);
  // Sink targets separate into one __idle ?-state, its !-state, and X each.
  EXPECT_EQ(sep.lts.num_states, 7u + 3u * 3u);
  EXPECT_EQ(sep.lts.initial, sep.base[0]);

  for (uint32_t k = 0; k < 3; ++k) {
    auto qsucc = sep.lts.successors(sep.choice_state(0, k));
    ASSERT_EQ(qsucc.size(), 2u);
    uint32_t next = k + 1 < 3 ? sep.choice_state(0, k + 1) : sep.x_state(0);
    EXPECT_EQ(qsucc[0], std::min(sep.commit_state(0, k), next));
    EXPECT_EQ(qsucc[1], std::max(sep.commit_state(0, k), next));
    auto bsucc = sep.lts.successors(sep.commit_state(0, k));
    EXPECT_EQ(bsucc.size(), 2u);  // Next plus the single target image
  }
  std::set<uint32_t> xsucc(sep.lts.successors(sep.x_state(0)).begin(),
                           sep.lts.successors(sep.x_state(0)).end());
  std::set<uint32_t> expect{sep.base[1], sep.base[2], sep.base[3]};
  EXPECT_EQ(xsucc, expect);

  // Bad states map to the first ?-state of their block.
  std::vector<uint32_t> expect_bad{sep.base[3]};
  EXPECT_EQ(sep.lts.bad, expect_bad);
}

TEST(Separation, ActionOrderWithinAState) {
  Lts lts = fan_out_lts({"c", "b", "a"}, false);
  SeparatedSystem lex = action_separate(lts, ActionOrder::lexicographic);
  std::vector<std::string> lex_names;
  for (uint32_t k = 0; k < lex.degree(0); ++k)
    lex_names.push_back(lex.lts.actions[lex.act_ids[lex.act_off[0] + k]]);
  std::vector<std::string> lex_expect{"a", "b", "c"};
  EXPECT_EQ(lex_names, lex_expect);

  SeparatedSystem dec = action_separate(lts, ActionOrder::declared);
  std::vector<std::string> dec_names;
  for (uint32_t k = 0; k < dec.degree(0); ++k)
    dec_names.push_back(dec.lts.actions[dec.act_ids[dec.act_off[0] + k]]);
  std::vector<std::string> dec_expect{"c", "b", "a"};
  EXPECT_EQ(dec_names, dec_expect);
}

TEST(Separation, PreservesBadReachability) {
  Rng rng(6002);
  for (int i = 0; i < 100; ++i) {
    Lts lts = respo::testing::random_lts(rng, 200);
    bool before = respo::testing::bad_reachable(lts);
    for (ActionOrder order : {ActionOrder::lexicographic, ActionOrder::declared}) {
      SeparatedSystem sep = action_separate(lts, order);
      EXPECT_EQ(respo::testing::bad_reachable(sep.lts), before) << "instance " << i;
    }
  }
}

TEST(Separation, LiftedCounterexamplesAreValid) {
  Rng rng(6003);
  for (int i = 0; i < 60; ++i) {
    Lts lts = respo::testing::random_lts(rng, 60, /*force_bad_reachable=*/true);
    auto cex = find_counterexample(lts);
    ASSERT_TRUE(cex.has_value());
    SeparatedSystem sep = action_separate(lts);
    Counterexample lifted = lift_counterexample(sep, lts, *cex);
    validate_counterexample(sep.lts, lifted);
    EXPECT_EQ(lifted.states.back(), sep.base[cex->states.back()]);
  }
}

TEST(Separation, SignatureClassification) {
  Lts lts = fan_out_lts({"a", "b", "c"}, true);
  SeparatedSystem sep = action_separate(lts);
  ResponsibilitySignature sig = action_signature(sep);
  std::vector<std::string> expect{"a", "b", "c"};
  EXPECT_EQ(sig.actor_names, expect);
  for (uint32_t k = 0; k < 3; ++k) {
    ASSERT_EQ(sig.actor_states[k].size(), 1u);
    EXPECT_EQ(sig.actor_states[k][0], sep.choice_state(0, k));
  }
  // Aux: all !-states plus the ?-states of completion self-loops; adv: all X.
  std::set<uint32_t> aux(sig.aux_states.begin(), sig.aux_states.end());
  for (uint32_t k = 0; k < 3; ++k) EXPECT_TRUE(aux.count(sep.commit_state(0, k)));
  for (uint32_t t = 1; t <= 3; ++t) {
    EXPECT_TRUE(aux.count(sep.choice_state(t, 0)));
    EXPECT_TRUE(aux.count(sep.commit_state(t, 0)));
  }
  std::set<uint32_t> adv(sig.adv_states.begin(), sig.adv_states.end());
  std::set<uint32_t> expect_adv;
  for (uint32_t s = 0; s < 4; ++s) expect_adv.insert(sep.x_state(s));
  EXPECT_EQ(adv, expect_adv);
  size_t covered = sig.aux_states.size() + sig.adv_states.size();
  for (const auto& st : sig.actor_states) covered += st.size();
  EXPECT_EQ(covered, sep.lts.num_states);
}

TEST(Separation, DeterministicSingleActionHasNoResponsibility) {
  // One action with one target everywhere: the play is forced, so the lone
  // action actor never switches, whether the property holds or not.
  for (bool reaches_bad : {false, true}) {
    Lts lts;
    lts.num_states = 3;
    lts.initial = 0;
    lts.is_bad = {0, 0, reaches_bad ? uint8_t{1} : uint8_t{0}};
    lts.actions = {"go"};
    lts.action_display = {"go"};
    std::vector<RawEdge> edges{{0, 1, 0}, {1, 2, 0}, {2, 0, 0}};
    finalize_lts(lts, std::move(edges));
    SeparatedSystem sep = action_separate(lts);
    ResponsibilitySignature sig = action_signature(sep);
    CoalitionOracle oracle(sep.lts, sig, CoalitionOracle::Mode::forward);
    ExactShapley res = shapley_exact(oracle);
    for (const Rational& v : res.values) EXPECT_EQ(v, Rational(0));
    EXPECT_EQ(res.gamma_empty, res.gamma_full);
  }
}
