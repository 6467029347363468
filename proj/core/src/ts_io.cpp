#include "respo/ts_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "respo/errors.hpp"
#include "respo/parser.hpp"

namespace respo {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

uint64_t parse_index(const std::string& tok, int line) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail(ErrorKind::format, "expected a state index, got '" + tok + "'", line);
  return v;
}

}  // namespace

void export_ts(const Lts& lts, const ResponsibilitySignature* sig, std::ostream& out) {
  out << "ts v1 states=" << lts.num_states << " init=" << lts.initial << "\n";
  out << "bad";
  for (uint32_t b : lts.bad) out << " " << b;
  out << "\n";
  for (uint32_t s = 0; s < lts.num_states; ++s) {
    for (uint32_t e = lts.row_off[s]; e < lts.row_off[s + 1]; ++e)
      out << "edge " << s << " " << lts.col[e] << " " << lts.actions[lts.edge_action[e]]
          << "\n";
  }
  if (sig) {
    for (size_t a = 0; a < sig->actor_names.size(); ++a) {
      out << "actor " << sig->actor_names[a];
      for (uint32_t s : sig->actor_states[a]) out << " " << s;
      out << "\n";
    }
    if (!sig->aux_states.empty()) {
      out << "aux";
      for (uint32_t s : sig->aux_states) out << " " << s;
      out << "\n";
    }
    if (!sig->adv_states.empty()) {
      out << "adv";
      for (uint32_t s : sig->adv_states) out << " " << s;
      out << "\n";
    }
  }
}

std::string export_ts_string(const Lts& lts, const ResponsibilitySignature* sig) {
  std::ostringstream os;
  export_ts(lts, sig, os);
  return os.str();
}

ImportedTs import_ts(std::istream& in) {
  ImportedTs out;
  Lts& lts = out.lts;

  std::string line;
  int lineno = 0;
  bool header_seen = false;
  bool signature_seen = false;
  std::vector<RawEdge> edges;
  ResponsibilitySignature sig;

  auto action_id = [&](const std::string& name) -> uint32_t {
    int id = lts.action_id(name);
    if (id >= 0) return static_cast<uint32_t>(id);
    lts.actions.push_back(name);
    lts.action_display.push_back(name);
    return static_cast<uint32_t>(lts.actions.size() - 1);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!header_seen) {
      if (tok[0] != "ts" || tok.size() < 4 || tok[1] != "v1")
        fail(ErrorKind::format, "expected header 'ts v1 states=<n> init=<i>'", lineno);
      if (tok[2].rfind("states=", 0) != 0 || tok[3].rfind("init=", 0) != 0)
        fail(ErrorKind::format, "expected header 'ts v1 states=<n> init=<i>'", lineno);
      uint64_t n = parse_index(tok[2].substr(7), lineno);
      uint64_t init = parse_index(tok[3].substr(5), lineno);
      if (n == 0) fail(ErrorKind::format, "a system needs at least one state", lineno);
      if (init >= n) fail(ErrorKind::format, "initial state out of range", lineno);
      lts.num_states = static_cast<uint32_t>(n);
      lts.initial = static_cast<uint32_t>(init);
      lts.is_bad.assign(lts.num_states, 0);
      header_seen = true;
      continue;
    }

    auto check_state = [&](uint64_t s) -> uint32_t {
      if (s >= lts.num_states)
        fail(ErrorKind::format, "state " + std::to_string(s) + " out of range", lineno);
      return static_cast<uint32_t>(s);
    };

    if (tok[0] == "bad") {
      for (size_t i = 1; i < tok.size(); ++i)
        lts.is_bad[check_state(parse_index(tok[i], lineno))] = 1;
    } else if (tok[0] == "edge") {
      if (tok.size() != 4)
        fail(ErrorKind::format, "expected 'edge <src> <dst> <action>'", lineno);
      uint32_t src = check_state(parse_index(tok[1], lineno));
      uint32_t dst = check_state(parse_index(tok[2], lineno));
      edges.push_back({src, dst, action_id(tok[3])});
    } else if (tok[0] == "actor") {
      if (tok.size() < 2) fail(ErrorKind::format, "actor line without a name", lineno);
      signature_seen = true;
      sig.actor_names.push_back(tok[1]);
      sig.actor_states.emplace_back();
      for (size_t i = 2; i < tok.size(); ++i)
        sig.actor_states.back().push_back(check_state(parse_index(tok[i], lineno)));
    } else if (tok[0] == "aux") {
      signature_seen = true;
      for (size_t i = 1; i < tok.size(); ++i)
        sig.aux_states.push_back(check_state(parse_index(tok[i], lineno)));
    } else if (tok[0] == "adv") {
      signature_seen = true;
      for (size_t i = 1; i < tok.size(); ++i)
        sig.adv_states.push_back(check_state(parse_index(tok[i], lineno)));
    } else {
      fail(ErrorKind::format, "unknown directive '" + tok[0] + "'", lineno);
    }
  }
  if (!header_seen) fail(ErrorKind::format, "missing 'ts v1' header", lineno);

  finalize_lts(lts, std::move(edges));
  if (signature_seen) {
    validate_signature(lts, sig);
    out.signature = std::move(sig);
  }
  return out;
}

ImportedTs import_ts_string(const std::string& text) {
  std::istringstream is(text);
  return import_ts(is);
}

Counterexample read_counterexample(const Lts& lts, std::istream& in) {
  Counterexample cex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(), ::isspace), trimmed.end());
    if (trimmed.empty() || trimmed[0] == '#') continue;

    if (lts.num_vars == 0) {
      cex.states.push_back(static_cast<uint32_t>(parse_index(trimmed, lineno)));
      if (cex.states.back() >= lts.num_states)
        fail(ErrorKind::format, "state index out of range", lineno);
      continue;
    }

    // var=value pairs joined by '&', any order, each variable exactly once.
    std::vector<long long> values(lts.num_vars);
    std::vector<uint8_t> seen(lts.num_vars, 0);
    size_t pos = 0;
    while (pos < trimmed.size()) {
      size_t amp = trimmed.find('&', pos);
      std::string pair = trimmed.substr(pos, amp == std::string::npos ? amp : amp - pos);
      pos = amp == std::string::npos ? trimmed.size() : amp + 1;
      size_t eq = pair.find('=');
      if (eq == std::string::npos || eq == 0)
        fail(ErrorKind::format, "expected var=value, got '" + pair + "'", lineno);
      std::string name = pair.substr(0, eq);
      auto it = std::find(lts.var_names.begin(), lts.var_names.end(), name);
      if (it == lts.var_names.end())
        fail(ErrorKind::format, "unknown variable '" + name + "'", lineno);
      size_t id = static_cast<size_t>(it - lts.var_names.begin());
      if (seen[id])
        fail(ErrorKind::format, "variable '" + name + "' given twice", lineno);
      seen[id] = 1;
      try {
        values[id] = std::stoll(pair.substr(eq + 1));
      } catch (const std::exception&) {
        fail(ErrorKind::format, "bad value in '" + pair + "'", lineno);
      }
    }
    for (size_t v = 0; v < lts.num_vars; ++v)
      if (!seen[v])
        fail(ErrorKind::format, "variable '" + lts.var_names[v] + "' missing", lineno);

    int64_t s = lts.find_state(values);
    if (s < 0)
      fail(ErrorKind::format, "no reachable state matches this valuation", lineno);
    cex.states.push_back(static_cast<uint32_t>(s));
  }
  if (cex.states.empty()) fail(ErrorKind::format, "counterexample file is empty", lineno);
  return cex;
}

void write_counterexample(const Lts& lts, const Counterexample& cex, std::ostream& out) {
  for (uint32_t s : cex.states) {
    if (lts.num_vars == 0)
      out << s << "\n";
    else
      out << lts.describe_state(s) << "\n";
  }
}

ResponsibilitySignature read_manual_signature(const Lts& lts, std::istream& in) {
  if (lts.num_vars == 0)
    fail(ErrorKind::usage, "manual signatures need a program-backed system");

  ResponsibilitySignature sig;
  std::vector<uint32_t>* aux = nullptr;
  std::vector<uint32_t>* adv = nullptr;
  struct Pred {
    std::vector<uint32_t>* states;
    BoolPtr expr;
  };
  std::vector<Pred> preds;

  // Resolve expressions against the system's variable layout.
  VarTable vars;
  for (const std::string& name : lts.var_names) vars.add({name, 0, 0, 0, -1});

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = line;
    size_t first = stripped.find_first_not_of(" \t");
    if (first == std::string::npos || stripped[first] == '#') continue;
    size_t colon = stripped.find(':');
    if (colon == std::string::npos)
      fail(ErrorKind::format, "expected '<name>: <expression>'", lineno);
    std::string name = stripped.substr(first, colon - first);
    while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
    if (name.empty()) fail(ErrorKind::format, "class without a name", lineno);

    BoolPtr expr;
    try {
      expr = parse_bool_expr(stripped.substr(colon + 1));
      resolve_vars(*expr, vars);
    } catch (const Error& e) {
      fail(ErrorKind::format, std::string(e.what()) + " in class '" + name + "'", lineno);
    }

    if (name == "aux") {
      if (aux) fail(ErrorKind::format, "class 'aux' given twice", lineno);
      aux = &sig.aux_states;
      preds.push_back({aux, expr});
    } else if (name == "adv") {
      if (adv) fail(ErrorKind::format, "class 'adv' given twice", lineno);
      adv = &sig.adv_states;
      preds.push_back({adv, expr});
    } else {
      sig.actor_names.push_back(name);
      sig.actor_states.emplace_back();
      preds.push_back({nullptr, expr});  // fixed up below: vector may reallocate
    }
  }

  size_t actor_i = 0;
  for (Pred& p : preds)
    if (!p.states) p.states = &sig.actor_states[actor_i++];

  for (uint32_t s = 0; s < lts.num_states; ++s) {
    auto values = lts.state(s);
    for (Pred& p : preds)
      if (eval_bool(*p.expr, values)) p.states->push_back(s);
  }

  validate_signature(lts, sig);  // overlaps and gaps surface here
  return sig;
}

}  // namespace respo
