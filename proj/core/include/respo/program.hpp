#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "respo/expr.hpp"

namespace respo {

// Global variable table; index order is declaration order (module order, then
// declaration order within the module), which fixes state-vector layout.
class VarTable {
 public:
  struct Entry {
    std::string name;
    long long lo = 0, hi = 0, init = 0;
    int module = -1;
  };

  int add(Entry entry);  // duplicate name raises Error(duplicate_variable)
  int find(const std::string& name) const;  // -1 when absent
  const Entry& operator[](int id) const { return entries_[id]; }
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, int> index_;
};

struct Decl {
  std::string name;
  long long lo = 0, hi = 0, init = 0;
  SourcePos pos;
};

struct Assignment {
  std::string var;
  int var_id = -1;
  ArithPtr expr;
  SourcePos pos;
};

struct Command {
  std::string action;  // empty until validation names anonymous commands
  bool synthetic_action = false;
  BoolPtr guard;
  std::vector<Assignment> updates;
  SourcePos pos;
};

struct Module {
  std::string name;
  std::vector<Decl> decls;
  std::vector<Command> commands;
  SourcePos pos;
};

struct Program {
  BoolPtr safety_invariant;  // may be null; analyses require one to be present
  std::vector<Module> modules;

  // Populated by validate():
  VarTable vars;
  std::vector<std::string> actions;       // first-occurrence order
  std::vector<bool> action_synthetic;     // parallel to actions
  bool validated = false;

  // Validates and freezes the program: checks declarations, resolves every
  // variable occurrence, names anonymous commands __m<i>_c<j> (1-based), and
  // builds the action table.
  void validate();

  int action_id(const std::string& name) const;
  // Actions appearing in two or more modules, in first-occurrence order.
  std::vector<std::string> sync_actions() const;
  // Modules that contain a command labelled with the action.
  std::vector<int> modules_with_action(const std::string& action) const;
  // User-facing name for an action: synthetic ones render as <module>.c<j>.
  std::string display_action(const std::string& action) const;

  std::vector<long long> initial_state() const;
};

// Canonical source form; parse(to_source(p)) equals p module-for-module.
std::string to_source(const Program& p);

}  // namespace respo
