#include "respo/program.hpp"

#include <algorithm>
#include <unordered_set>

#include "respo/errors.hpp"

namespace respo {

int VarTable::add(Entry entry) {
  auto [it, inserted] = index_.emplace(entry.name, static_cast<int>(entries_.size()));
  if (!inserted)
    fail(ErrorKind::duplicate_variable, "variable '" + entry.name + "' declared twice");
  entries_.push_back(std::move(entry));
  return it->second;
}

int VarTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void Program::validate() {
  vars = VarTable{};
  actions.clear();
  action_synthetic.clear();

  for (size_t mi = 0; mi < modules.size(); ++mi) {
    for (const Decl& d : modules[mi].decls) {
      if (vars.find(d.name) >= 0)
        fail(ErrorKind::duplicate_variable, "variable '" + d.name + "' declared twice",
             d.pos.line, d.pos.column);
      if (d.init < d.lo || d.init > d.hi)
        fail(ErrorKind::init_out_of_range,
             "init " + std::to_string(d.init) + " outside [" + std::to_string(d.lo) +
                 ".." + std::to_string(d.hi) + "] for '" + d.name + "'",
             d.pos.line, d.pos.column);
      vars.add({d.name, d.lo, d.hi, d.init, static_cast<int>(mi)});
    }
  }

  if (safety_invariant) resolve_vars(*safety_invariant, vars);

  std::unordered_set<std::string> user_actions;
  for (const Module& m : modules)
    for (const Command& c : m.commands)
      if (!c.action.empty() && !c.synthetic_action) user_actions.insert(c.action);

  auto note_action = [&](const std::string& name, bool synthetic) {
    if (std::find(actions.begin(), actions.end(), name) == actions.end()) {
      actions.push_back(name);
      action_synthetic.push_back(synthetic);
    }
  };

  for (size_t mi = 0; mi < modules.size(); ++mi) {
    Module& m = modules[mi];
    for (size_t ci = 0; ci < m.commands.size(); ++ci) {
      Command& c = m.commands[ci];
      if (c.action.empty() || c.synthetic_action) {
        std::string fresh =
            "__m" + std::to_string(mi + 1) + "_c" + std::to_string(ci + 1);
        if (user_actions.count(fresh))
          fail(ErrorKind::name_clash,
               "action name '" + fresh + "' is reserved for unlabelled commands",
               c.pos.line, c.pos.column);
        c.action = fresh;
        c.synthetic_action = true;
      }
      note_action(c.action, c.synthetic_action);

      resolve_vars(*c.guard, vars);
      std::unordered_set<std::string> assigned;
      for (Assignment& a : c.updates) {
        int id = vars.find(a.var);
        if (id < 0)
          fail(ErrorKind::undeclared_variable, "variable '" + a.var + "'", a.pos.line,
               a.pos.column);
        if (vars[id].module != static_cast<int>(mi))
          fail(ErrorKind::cross_module_assignment,
               "'" + a.var + "' belongs to module '" +
                   modules[static_cast<size_t>(vars[id].module)].name + "'",
               a.pos.line, a.pos.column);
        if (!assigned.insert(a.var).second)
          fail(ErrorKind::duplicate_variable,
               "'" + a.var + "' assigned twice in one command", a.pos.line, a.pos.column);
        a.var_id = id;
        resolve_vars(*a.expr, vars);
      }
    }
  }

  validated = true;
}

int Program::action_id(const std::string& name) const {
  auto it = std::find(actions.begin(), actions.end(), name);
  return it == actions.end() ? -1 : static_cast<int>(it - actions.begin());
}

std::vector<std::string> Program::sync_actions() const {
  std::vector<std::string> out;
  for (const std::string& a : actions)
    if (modules_with_action(a).size() >= 2) out.push_back(a);
  return out;
}

std::vector<int> Program::modules_with_action(const std::string& action) const {
  std::vector<int> out;
  for (size_t mi = 0; mi < modules.size(); ++mi) {
    for (const Command& c : modules[mi].commands) {
      if (c.action == action) {
        out.push_back(static_cast<int>(mi));
        break;
      }
    }
  }
  return out;
}

std::string Program::display_action(const std::string& action) const {
  int id = action_id(action);
  if (id < 0 || !action_synthetic[static_cast<size_t>(id)]) return action;
  // Generated names look like __m<i>_c<j>; show them as <module>.c<j>.
  size_t underscore = action.find("_c", 3);
  if (action.rfind("__m", 0) != 0 || underscore == std::string::npos) return action;
  size_t mi = std::stoul(action.substr(3, underscore - 3));
  if (mi == 0 || mi > modules.size()) return action;
  return modules[mi - 1].name + ".c" + action.substr(underscore + 2);
}

std::vector<long long> Program::initial_state() const {
  std::vector<long long> s;
  s.reserve(static_cast<size_t>(vars.size()));
  for (const auto& v : vars.entries()) s.push_back(v.init);
  return s;
}

std::string to_source(const Program& p) {
  std::string out;
  if (p.safety_invariant) {
    out += "lightning = " + to_string(*p.safety_invariant) + ";\n\n";
  }
  for (const Module& m : p.modules) {
    out += "module " + m.name + "\n";
    for (const Decl& d : m.decls) {
      out += "  " + d.name + ": [" + std::to_string(d.lo) + ".." + std::to_string(d.hi) +
             "] init " + std::to_string(d.init) + ";\n";
    }
    for (const Command& c : m.commands) {
      out += "  [";
      if (!c.synthetic_action) out += c.action;
      out += "] " + to_string(*c.guard) + " -> ";
      if (c.updates.empty()) {
        out += "true";
      } else {
        for (size_t i = 0; i < c.updates.size(); ++i) {
          if (i) out += " & ";
          out += c.updates[i].var + " := " + to_string(*c.updates[i].expr);
        }
      }
      out += ";\n";
    }
    out += "endmodule\n\n";
  }
  return out;
}

}  // namespace respo
