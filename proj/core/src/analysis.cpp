#include "respo/analysis.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "respo/errors.hpp"
#include "respo/parser.hpp"
#include "respo/ts_io.hpp"

namespace respo {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Exchange files start with a `ts v1` header (after comments); programs start
// with `lightning` or `module`.
bool is_exchange_text(const std::string& text) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    size_t first = text.find_first_not_of(" \t\r", pos);
    if (first != std::string::npos && first < eol && text[first] != '#')
      return text.compare(first, 3, "ts ") == 0;
    pos = eol + 1;
  }
  return false;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    pos = comma + 1;
  }
  return out;
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void apply_property_override(Program& p, const std::optional<std::string>& property,
                             std::vector<std::string>* warnings) {
  if (property) {
    BoolPtr prop;
    try {
      prop = parse_bool_expr(*property);
    } catch (const Error& e) {
      fail(ErrorKind::usage, std::string("bad --property expression: ") + e.what());
    }
    resolve_vars(*prop, p.vars);
    if (p.safety_invariant && warnings)
      warnings->push_back("--property overrides the model's lightning declaration");
    p.safety_invariant = std::move(prop);
  }
  if (!p.safety_invariant)
    fail(ErrorKind::usage,
         "no safety property: declare 'lightning = <expr>;' in the model or pass "
         "--property");
}

void note_normalization(const Lts& lts, std::vector<std::string>* warnings) {
  if (lts.deadlock_completions > 0)
    warnings->push_back("completed " + std::to_string(lts.deadlock_completions) +
                        " deadlocked state(s) with idle self-loops");
  if (lts.bad_edges_dropped > 0)
    warnings->push_back("dropped " + std::to_string(lts.bad_edges_dropped) +
                        " outgoing edge(s) of bad states (bad is absorbing)");
}

}  // namespace

ResponsibilityReport run_analysis(const AnalysisConfig& cfg) {
  if (cfg.mode != "forward" && cfg.mode != "backward")
    fail(ErrorKind::usage, "--mode must be forward or backward, got '" + cfg.mode + "'");
  if (cfg.algorithm != "exact" && cfg.algorithm != "sample")
    fail(ErrorKind::usage,
         "--algorithm must be exact or sample, got '" + cfg.algorithm + "'");
  if (cfg.counterexample && cfg.mode != "backward")
    fail(ErrorKind::usage, "--counterexample only applies to backward mode");

  std::vector<std::string> warnings;
  std::string text = read_file(cfg.model_path);
  bool exchange = is_exchange_text(text);
  std::string scheme = cfg.actors.empty() ? (exchange ? "file" : "module") : cfg.actors;

  BuildOptions opts;
  opts.max_states = cfg.max_states;
  opts.clamp = cfg.clamp;

  Lts base;  // the system whose coordinates user-facing files use
  ResponsibilitySignature sig;
  std::optional<SeparatedSystem> sep;  // present iff scheme == action

  if (exchange) {
    if (cfg.property)
      fail(ErrorKind::usage,
           "--property needs a guarded-command model; exchange files carry their bad "
           "states directly");
    ImportedTs imported = import_ts_string(text);
    base = std::move(imported.lts);
    note_normalization(base, &warnings);
    if (scheme == "file") {
      if (!imported.signature)
        fail(ErrorKind::usage,
             "the exchange file carries no actor/aux/adv lines; pass --actors to pick "
             "a scheme");
      sig = std::move(*imported.signature);
    } else if (scheme == "action") {
      sep = action_separate(base, cfg.action_order);
      sig = action_signature(*sep);
    } else {
      fail(ErrorKind::usage,
           "actor scheme '" + scheme + "' needs a guarded-command model");
    }
  } else {
    Program p = parse_program(text);
    apply_property_override(p, cfg.property, &warnings);
    if (scheme == "module") {
      SchedulerProgram sp = with_scheduler(p);
      base = build_ts(sp.program, opts);
      note_normalization(base, &warnings);
      sig = module_signature(sp, base, &warnings);
    } else if (scheme.rfind("value:", 0) == 0) {
      std::vector<std::string> vars = split_list(scheme.substr(6));
      if (vars.empty())
        fail(ErrorKind::usage, "the value scheme needs at least one variable");
      base = build_ts(p, opts);
      note_normalization(base, &warnings);
      sig = value_signature(base, vars);
    } else if (scheme == "action") {
      base = build_ts(p, opts);
      note_normalization(base, &warnings);
      sep = action_separate(base, cfg.action_order);
      sig = action_signature(*sep);
    } else if (scheme.rfind("manual:", 0) == 0) {
      base = build_ts(p, opts);
      note_normalization(base, &warnings);
      std::string path = scheme.substr(7);
      std::ifstream f(path);
      if (!f) fail(ErrorKind::io, "cannot read signature file '" + path + "'");
      sig = read_manual_signature(base, f);
    } else if (scheme == "file") {
      fail(ErrorKind::usage,
           "--actors file reads the signature embedded in an exchange-format model");
    } else {
      fail(ErrorKind::usage, "unknown actor scheme '" + scheme +
                                 "' (module, value:<vars>, action, manual:<path>, "
                                 "file)");
    }
  }

  const Lts& system = sep ? sep->lts : base;

  std::optional<Counterexample> cex;
  if (cfg.mode == "backward") {
    if (cfg.counterexample) {
      std::ifstream f(*cfg.counterexample);
      if (!f)
        fail(ErrorKind::io, "cannot read counterexample '" + *cfg.counterexample + "'");
      if (sep) {
        Counterexample on_base = read_counterexample(base, f);
        cex = lift_counterexample(*sep, base, on_base);
      } else {
        cex = read_counterexample(system, f);
        validate_counterexample(system, *cex);
      }
      warnings.push_back("counterexample: supplied (" +
                         std::to_string(cex->states.size()) + " states)");
    } else {
      cex = find_counterexample(system);
      if (!cex)
        fail(ErrorKind::usage,
             "backward mode needs a counterexample, but no bad state is reachable");
      warnings.push_back("counterexample: derived (" +
                         std::to_string(cex->states.size()) + " states)");
    }
  }

  if (cfg.debug)
    std::cerr << "[respo] states=" << system.num_states << " edges="
              << system.col.size() << " actors=" << sig.actor_count() << "\n";

  int threads = effective_threads(cfg.threads);
  auto t0 = std::chrono::steady_clock::now();
  CoalitionOracle oracle(system, sig,
                         cfg.mode == "backward" ? CoalitionOracle::Mode::backward
                                                : CoalitionOracle::Mode::forward,
                         cex ? &*cex : nullptr);

  ResponsibilityReport report;
  report.mode = cfg.mode;
  report.algorithm = cfg.algorithm;
  report.warnings = std::move(warnings);

  if (cfg.algorithm == "exact") {
    ExactShapley ex = shapley_exact(oracle, threads, cfg.max_actors);
    for (int a = 0; a < sig.actor_count(); ++a) {
      ActorResult r;
      r.name = sig.actor_names[a];
      ActorResult::Exact e;
      e.value = ex.values[a];
      if (ex.witnesses[a]) {
        std::vector<std::string> names;
        for (int b = 0; b < sig.actor_count(); ++b)
          if (*ex.witnesses[a] >> b & 1) names.push_back(sig.actor_names[b]);
        e.witness = std::move(names);
      }
      r.exact = std::move(e);
      report.actors.push_back(std::move(r));
    }
    report.gamma_empty = ex.gamma_empty;
    report.gamma_full = ex.gamma_full;
  } else {
    if (sig.actor_count() > cfg.max_actors)
      fail(ErrorKind::too_many_actors,
           std::to_string(sig.actor_count()) + " actors exceed the cap of " +
               std::to_string(cfg.max_actors) + "; raise --max-actors");
    SampledShapley sm = shapley_sampled(oracle, cfg.samples, cfg.seed, threads);
    for (int a = 0; a < sig.actor_count(); ++a) {
      ActorResult r;
      r.name = sig.actor_names[a];
      r.sampled = ActorResult::Sampled{sm.means[a], sm.half_widths[a], sm.samples};
      report.actors.push_back(std::move(r));
    }
    report.gamma_empty = sm.gamma_empty;
    report.gamma_full = sm.gamma_full;
  }
  report.coalitions_evaluated = oracle.evaluations();

  auto t1 = std::chrono::steady_clock::now();
  if (cfg.timing)
    report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

TransformResult run_transform(const TransformConfig& cfg) {
  TransformResult out;
  std::string text = read_file(cfg.model_path);
  bool exchange = is_exchange_text(text);

  BuildOptions opts;
  opts.max_states = cfg.max_states;
  opts.clamp = cfg.clamp;

  if (cfg.kind == "sched") {
    if (exchange)
      fail(ErrorKind::usage,
           "the scheduler transform works on guarded-command models, not exchange "
           "files");
    Program p = parse_program(text);
    if (cfg.property) apply_property_override(p, cfg.property, &out.warnings);
    SchedulerProgram sp = with_scheduler(p);
    out.text = to_source(sp.program);
  } else if (cfg.kind == "action") {
    Lts base;
    if (exchange) {
      if (cfg.property)
        fail(ErrorKind::usage,
             "--property needs a guarded-command model; exchange files carry their "
             "bad states directly");
      base = import_ts_string(text).lts;
    } else {
      Program p = parse_program(text);
      apply_property_override(p, cfg.property, &out.warnings);
      base = build_ts(p, opts);
    }
    note_normalization(base, &out.warnings);
    SeparatedSystem sep = action_separate(base, cfg.action_order);
    ResponsibilitySignature sig = action_signature(sep);
    out.text = export_ts_string(sep.lts, &sig);
  } else {
    fail(ErrorKind::usage, "transform kind must be sched or action, got '" + cfg.kind +
                               "'");
  }
  return out;
}

std::string run_check(const std::string& model_path) {
  std::string text = read_file(model_path);
  std::ostringstream out;
  if (is_exchange_text(text)) {
    ImportedTs imported = import_ts_string(text);
    const Lts& lts = imported.lts;
    out << "exchange model: ok\n";
    out << "states: " << lts.num_states << "  transitions: " << lts.col.size()
        << "  bad: " << lts.bad.size() << "\n";
    out << "actions: " << lts.actions.size() << "\n";
    if (imported.signature)
      out << "signature: " << imported.signature->actor_count() << " actor(s), "
          << imported.signature->aux_states.size() << " aux, "
          << imported.signature->adv_states.size() << " adv\n";
    else
      out << "signature: none\n";
  } else {
    Program p = parse_program(text);
    out << "program: ok\n";
    out << "modules:";
    for (const Module& m : p.modules) out << " " << m.name;
    out << "\n";
    out << "variables: " << p.vars.size() << "  actions: " << p.actions.size() << "\n";
    out << "safety property: " << (p.safety_invariant ? "present" : "absent") << "\n";
  }
  return out.str();
}

}  // namespace respo
