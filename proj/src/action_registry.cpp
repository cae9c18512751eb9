#include "nl2bt/action_registry.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "text_util.hpp"

namespace nl2bt {

std::optional<std::string> ActionSchema::resolve(std::string_view param) const {
  if (std::find(param_names.begin(), param_names.end(), param) !=
      param_names.end()) {
    return std::string(param);
  }
  if (auto it = aliases.find(param); it != aliases.end()) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> ActionSchema::order_of(std::string_view param) const {
  auto canonical = resolve(param);
  if (!canonical) return std::nullopt;
  auto it = std::find(param_names.begin(), param_names.end(), *canonical);
  if (it == param_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - param_names.begin());
}

std::string to_string(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  out += " [" + d.code + "] action " + std::to_string(d.action_index);
  if (d.param_index != Diagnostic::kNoParam) {
    out += " param " + std::to_string(d.param_index);
  }
  out += ": " + d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

const ActionSchema* ActionRegistry::lookup(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second.schema;
}

bool ActionRegistry::is_builtin(std::string_view name) const {
  auto it = entries_.find(name);
  return it != entries_.end() && it->second.builtin;
}

std::vector<std::string> ActionRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

bool ActionRegistry::define(ActionSchema schema, bool builtin) {
  std::string name = schema.name;
  auto [it, inserted] =
      entries_.insert_or_assign(std::move(name), Entry{std::move(schema), builtin});
  return !inserted;
}

ActionRegistry builtin_registry() {
  ActionRegistry registry;
  ActionSchema move{"move", {"x", "y", "z", "roll", "pitch", "raw"}, {}};
  // The vocabulary spells the yaw axis `raw`; accept `yaw` as well.
  move.aliases.emplace("yaw", "raw");
  registry.define(std::move(move), true);
  registry.define({"flatten", {"num"}, {}}, true);
  registry.define({"say", {"words"}, {}}, true);
  registry.define({"clean", {"obj"}, {}}, true);
  registry.define({"bring", {"val"}, {}}, true);
  registry.define({"find", {"val"}, {}}, true);
  registry.define({"goal", {}, {}}, true);
  registry.define({"gate", {}, {}}, true);
  return registry;
}

ActionRegistry load_registry(std::string_view config) {
  ActionRegistry registry = builtin_registry();
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(config)) {
    ++line_no;
    std::vector<std::string> words = detail::split_words(detail::strip_comment(line));
    if (words.empty()) continue;
    for (const std::string& word : words) {
      if (!detail::is_identifier(word)) {
        throw ConfigParseError(line_no, "'" + word + "' is not an identifier");
      }
    }
    ActionSchema schema;
    schema.name = words.front();
    std::set<std::string> seen;
    for (std::size_t i = 1; i < words.size(); ++i) {
      if (!seen.insert(words[i]).second) {
        throw ConfigParseError(line_no, "parameter '" + words[i] +
                                            "' listed twice for '" +
                                            schema.name + "'");
      }
      schema.param_names.push_back(words[i]);
    }
    const bool shadows_builtin = registry.is_builtin(schema.name);
    std::string name = schema.name;
    if (registry.define(std::move(schema), false)) {
      registry.load_diagnostics_.push_back(
          {Severity::Warning, "redefined-action",
           "line " + std::to_string(line_no) + " redefines " +
               (shadows_builtin ? "built-in " : "") + "action '" + name + "'",
           line_no, Diagnostic::kNoParam});
    }
  }
  return registry;
}

std::vector<Diagnostic> validate(const SequenceNode& tree,
                                 const ActionRegistry& registry,
                                 ValidationMode mode) {
  const Severity soft =
      mode == ValidationMode::Strict ? Severity::Error : Severity::Warning;
  std::vector<Diagnostic> out;
  std::size_t expected_var = 0;
  for (std::size_t a = 0; a < tree.actions.size(); ++a) {
    const ActionNode& action = tree.actions[a];
    const ActionSchema* schema = registry.lookup(action.name);
    if (!schema) {
      out.push_back({soft, "unknown-action",
                     "unknown action '" + action.name + "'", a,
                     Diagnostic::kNoParam});
    }
    std::set<std::string, std::less<>> seen;
    for (std::size_t p = 0; p < action.params.size(); ++p) {
      const ParamNode& param = action.params[p];
      std::string canonical = param.name;
      if (schema) {
        if (auto resolved = schema->resolve(param.name)) {
          canonical = *resolved;
        } else {
          out.push_back({soft, "unknown-param",
                         "unknown param '" + param.name + "' on " + action.name,
                         a, p});
        }
      }
      if (!seen.insert(canonical).second) {
        out.push_back({Severity::Error, "duplicate-param",
                       "param '" + param.name + "' given twice on " + action.name,
                       a, p});
      }
      if (param.var_index != expected_var) {
        out.push_back({soft, "variable-index",
                       "variable index " + std::to_string(param.var_index) +
                           ", expected " + std::to_string(expected_var),
                       a, p});
      }
      ++expected_var;
    }
  }
  return out;
}

}  // namespace nl2bt
