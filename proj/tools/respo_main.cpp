#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "respo/analysis.hpp"
#include "respo/benchgen.hpp"
#include "respo/errors.hpp"
#include "respo/ts_io.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) respo::fail(respo::ErrorKind::io, "cannot write '" + out_path + "'");
  out << text;
}

respo::ActionOrder parse_action_order(const std::string& name) {
  if (name == "lexicographic") return respo::ActionOrder::lexicographic;
  if (name == "declared") return respo::ActionOrder::declared;
  respo::fail(respo::ErrorKind::usage,
              "--action-order must be lexicographic or declared, got '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"respo: Shapley responsibility of actors in transition systems"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Compute responsibility values for a model's actors");
  respo::AnalysisConfig cfg;
  std::string output_format = "table";
  std::string out_path;
  std::string action_order = "lexicographic";
  std::string property_text;
  std::string counterexample_path;
  bool no_timing = false;
  analyze->add_option("model", cfg.model_path, "Model file (program or exchange format)")
      ->required();
  analyze->add_option("--property", property_text,
                      "Safety property, overrides the model's lightning declaration");
  analyze->add_option("--mode", cfg.mode, "forward | backward")
      ->default_val("forward");
  analyze->add_option("--counterexample", counterexample_path,
                      "Counterexample file (backward mode; derived when absent)");
  analyze->add_option("--actors", cfg.actors,
                      "module | value:<v1,...> | action | manual:<path> | file");
  analyze->add_option("--algorithm", cfg.algorithm, "exact | sample")
      ->default_val("exact");
  analyze->add_option("--samples", cfg.samples, "Sample count for --algorithm sample")
      ->default_val(10000);
  analyze->add_option("--seed", cfg.seed, "Sampling seed")->default_val(1);
  analyze->add_option("--output", output_format, "table | json")->default_val("table");
  analyze->add_option("--out", out_path, "Write the report here instead of stdout");
  analyze->add_option("--max-states", cfg.max_states, "State-space cap")
      ->envname("RESPO_MAX_STATES")
      ->default_val(uint64_t{10'000'000});
  analyze->add_option("--max-actors", cfg.max_actors, "Actor cap for exact mode")
      ->default_val(respo::kDefaultMaxActors);
  analyze->add_flag("--clamp", cfg.clamp,
                    "Clamp out-of-range updates to the variable's bounds");
  analyze->add_option("--action-order", action_order,
                      "Choice order in action separation: lexicographic | declared")
      ->default_val("lexicographic");
  analyze->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->default_val(0);
  analyze->add_flag("--no-timing", no_timing,
                    "Report wall_ms as 0 for byte-stable output");
  analyze->add_flag("--debug", cfg.debug, "Progress notes on stderr");

  // transform
  auto* transform = app.add_subcommand(
      "transform", "Emit the scheduler-transformed or action-separated model");
  respo::TransformConfig tcfg;
  std::string t_out_path;
  std::string t_action_order = "lexicographic";
  std::string t_property;
  transform->add_option("model", tcfg.model_path, "Model file")->required();
  transform->add_option("--to", tcfg.kind, "sched | action")->required();
  transform->add_option("--property", t_property, "Safety property override");
  transform->add_option("--max-states", tcfg.max_states, "State-space cap")
      ->envname("RESPO_MAX_STATES")
      ->default_val(uint64_t{10'000'000});
  transform->add_flag("--clamp", tcfg.clamp,
                      "Clamp out-of-range updates to the variable's bounds");
  transform->add_option("--action-order", t_action_order,
                        "lexicographic | declared")
      ->default_val("lexicographic");
  transform->add_option("--out", t_out_path, "Write here instead of stdout");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a benchmark model");
  std::string g_family;
  uint32_t g_n = 0, g_m = 1;
  uint64_t g_seed = 1;
  std::vector<uint32_t> g_steps = {1, 2, 3};
  double g_bad_fraction = 0.01;
  uint32_t g_out_degree = 6;
  uint32_t g_leaf_period = 10;
  std::string g_out_path;
  gen->add_option("--family", g_family, "linear | random | tree")->required();
  gen->add_option("--n", g_n, "Size parameter")->required();
  gen->add_option("--m", g_m, "Actor count")->required();
  gen->add_option("--seed", g_seed, "Seed (random family)")->default_val(1);
  gen->add_option("--steps", g_steps, "Step sizes (linear family)");
  gen->add_option("--bad-fraction", g_bad_fraction, "Bad-state share (random family)")
      ->default_val(0.01);
  gen->add_option("--out-degree", g_out_degree, "Successors per state (random family)")
      ->default_val(6);
  gen->add_option("--leaf-period", g_leaf_period, "Every k-th leaf is bad (tree family)")
      ->default_val(10);
  gen->add_option("--out", g_out_path, "Write here instead of stdout");

  // check
  auto* check = app.add_subcommand("check", "Parse and validate a model");
  std::string c_model;
  check->add_option("model", c_model, "Model file")->required();

  try {
    app.parse(argc, argv);

    if (*analyze) {
      if (!property_text.empty()) cfg.property = property_text;
      if (!counterexample_path.empty()) cfg.counterexample = counterexample_path;
      cfg.action_order = parse_action_order(action_order);
      cfg.timing = !no_timing;
      if (output_format != "table" && output_format != "json")
        respo::fail(respo::ErrorKind::usage,
                    "--output must be table or json, got '" + output_format + "'");
      respo::ResponsibilityReport report = respo::run_analysis(cfg);
      write_output(output_format == "json" ? respo::to_json(report)
                                           : respo::to_table(report),
                   out_path);
    } else if (*transform) {
      if (!t_property.empty()) tcfg.property = t_property;
      tcfg.action_order = parse_action_order(t_action_order);
      respo::TransformResult result = respo::run_transform(tcfg);
      for (const std::string& w : result.warnings)
        std::cerr << "warning: " << w << "\n";
      write_output(result.text, t_out_path);
    } else if (*gen) {
      respo::GeneratedModel model;
      if (g_family == "linear")
        model = respo::gen_linear(g_n, g_m, g_steps);
      else if (g_family == "random")
        model = respo::gen_random(g_n, g_m, g_seed, g_bad_fraction, g_out_degree);
      else if (g_family == "tree")
        model = respo::gen_tree(g_n, g_m, g_leaf_period);
      else
        respo::fail(respo::ErrorKind::usage,
                    "--family must be linear, random or tree, got '" + g_family + "'");
      write_output(respo::export_ts_string(model.lts, &model.signature), g_out_path);
    } else if (*check) {
      std::cout << respo::run_check(c_model);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const respo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return respo::exit_code_for(e.kind);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
