#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nl2bt/logical_form.hpp"

namespace nl2bt {

struct ActionSchema {
  std::string name;
  std::vector<std::string> param_names;  // permitted params, in attribute order
  // Alternate spellings accepted for a param: alias -> canonical param name.
  std::map<std::string, std::string, std::less<>> aliases;

  // Canonical name for `param` (itself, or its alias target), if permitted.
  std::optional<std::string> resolve(std::string_view param) const;
  // Position of `param` (or its alias target) in param_names.
  std::optional<std::size_t> order_of(std::string_view param) const;

  bool operator==(const ActionSchema&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  static constexpr std::size_t kNoParam = static_cast<std::size_t>(-1);

  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::size_t action_index = 0;
  std::size_t param_index = kNoParam;  // kNoParam when it concerns the action

  bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& diagnostic);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

class ActionRegistry {
 public:
  struct Entry {
    ActionSchema schema;
    bool builtin = false;
  };

  const ActionSchema* lookup(std::string_view name) const;
  bool is_builtin(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> names() const;

  // Adds or replaces a schema; returns true when an existing entry was replaced.
  bool define(ActionSchema schema, bool builtin = false);

  // Diagnostics raised while loading a registry file (shadowed built-ins).
  const std::vector<Diagnostic>& load_diagnostics() const { return load_diagnostics_; }

 private:
  friend ActionRegistry load_registry(std::string_view config);

  std::map<std::string, Entry, std::less<>> entries_;
  std::vector<Diagnostic> load_diagnostics_;
};

// move(x,y,z,roll,pitch,raw) with `yaw` aliased to `raw`, flatten(num),
// say(words), clean(obj), bring(val), find(val), goal(), gate().
ActionRegistry builtin_registry();

// Built-ins plus the actions in `config`, one `name param...` per line,
// `#` comments. Redefining a built-in replaces it with a warning.
ActionRegistry load_registry(std::string_view config);

enum class ValidationMode { Strict, Lenient };

// Diagnostics in tree pre-order. Empty means valid.
std::vector<Diagnostic> validate(const SequenceNode& tree,
                                 const ActionRegistry& registry,
                                 ValidationMode mode);

}  // namespace nl2bt
