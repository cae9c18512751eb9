#include "nl2bt/nl_frontend.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include "text_util.hpp"

namespace nl2bt {
namespace {

constexpr std::string_view kWildcard = "*";
constexpr std::string_view kComma = ",";

bool is_digit(char c) { return c >= '0' && c <= '9'; }

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// [+-]? digits ( '.' digits )?  |  [+-]? '.' digits
bool is_number(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++int_digits;
  if (i == s.size()) return int_digits > 0;
  if (s[i] != '.') return false;
  ++i;
  std::size_t frac_digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++frac_digits;
  return i == s.size() && frac_digits > 0;
}

std::string normalize_word(std::string_view raw) {
  std::string word;
  word.reserve(raw.size());
  for (char c : raw) word += ascii_lower(c);

  std::string_view core = word;
  while (!core.empty() && std::string_view("'\"([{`").find(core.front()) != std::string_view::npos) {
    core.remove_prefix(1);
  }
  while (!core.empty() && std::string_view(".,!?;:'\")]}`").find(core.back()) != std::string_view::npos) {
    core.remove_suffix(1);
  }
  if (is_number(core)) return std::string(core);

  std::string kept;
  for (char c : word) {
    auto u = static_cast<unsigned char>(c);
    if ((c >= 'a' && c <= 'z') || is_digit(c) || c == '_' || c == '-' || c == '.' || u >= 0x80) {
      kept += c;
    }
  }
  std::string_view trimmed = kept;
  while (!trimmed.empty() && (trimmed.front() == '-' || trimmed.front() == '.')) trimmed.remove_prefix(1);
  while (!trimmed.empty() && (trimmed.back() == '-' || trimmed.back() == '.')) trimmed.remove_suffix(1);
  return std::string(trimmed);
}

// Normalized words with clause commas kept as "," tokens. A comma between two
// digits belongs to the number and is not a separator.
std::vector<std::string> words_with_commas(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string& raw : detail::split_words(text)) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= raw.size(); ++i) {
      bool split = i == raw.size();
      if (!split && raw[i] == ',') {
        bool inside_number = i > 0 && i + 1 < raw.size() && is_digit(raw[i - 1]) &&
                             is_digit(raw[i + 1]);
        split = !inside_number;
      }
      if (!split) continue;
      std::string word = normalize_word(std::string_view(raw).substr(start, i - start));
      if (!word.empty()) out.push_back(std::move(word));
      if (i < raw.size()) out.emplace_back(kComma);
      start = i + 1;
    }
  }
  return out;
}

bool matches_at(const std::vector<std::string>& words, std::size_t at,
                const std::vector<std::string>& pattern) {
  if (pattern.empty() || at + pattern.size() > words.size()) return false;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != kWildcard && pattern[i] != words[at + i]) return false;
  }
  return true;
}

struct VerbMatch {
  const VerbEntry* entry = nullptr;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Leftmost position with any trigger; longest trigger there. Equal-length
// triggers for different actions at that position are ambiguous.
std::optional<VerbMatch> match_verb(const std::vector<std::string>& words,
                                    const Lexicon& lexicon, std::size_t clause) {
  for (std::size_t start = 0; start < words.size(); ++start) {
    std::vector<const VerbEntry*> best;
    std::size_t best_len = 0;
    for (const VerbEntry& entry : lexicon.verbs()) {
      if (!matches_at(words, start, entry.trigger)) continue;
      if (entry.trigger.size() > best_len) {
        best.assign(1, &entry);
        best_len = entry.trigger.size();
      } else if (entry.trigger.size() == best_len) {
        best.push_back(&entry);
      }
    }
    if (!best.empty()) {
      for (const VerbEntry* other : best) {
        if (other->action != best.front()->action) {
          throw TranslateError(
              TranslateErrorKind::AmbiguousMatch, clause,
              "clause " + std::to_string(clause + 1) + " ('" + detail::join(words) +
                  "') matches both '" + best.front()->action + "' and '" +
                  other->action + "'");
        }
      }
      return VerbMatch{best.front(), start, start + best_len};
    }
  }
  return std::nullopt;
}

bool starts_with_verb(const std::vector<std::string>& words, const Lexicon& lexicon) {
  for (const VerbEntry& entry : lexicon.verbs()) {
    if (matches_at(words, 0, entry.trigger)) return true;
  }
  return false;
}

const ParamRule* cue_at(const std::vector<std::string>& words, std::size_t at,
                        const std::vector<ParamRule>& rules) {
  const ParamRule* best = nullptr;
  for (const ParamRule& rule : rules) {
    if (rule.cue.empty() || !matches_at(words, at, rule.cue)) continue;
    if (!best || rule.cue.size() > best->cue.size()) best = &rule;
  }
  return best;
}

const ParamRule* empty_cue_rule(const std::vector<ParamRule>& rules) {
  for (const ParamRule& rule : rules) {
    if (rule.cue.empty()) return &rule;
  }
  return nullptr;
}

std::vector<std::string> parse_phrase(std::string_view phrase, std::size_t line_no,
                                      bool allow_wildcard) {
  std::vector<std::string> words;
  for (const std::string& raw : detail::split_words(phrase)) {
    if (allow_wildcard && raw == kWildcard) {
      words.push_back(raw);
      continue;
    }
    std::string word = normalize_word(raw);
    if (word.empty() || word != raw) {
      throw ConfigParseError(line_no, "'" + raw + "' is not a normalized word");
    }
    words.push_back(std::move(word));
  }
  return words;
}

}  // namespace

std::vector<std::string> normalize(std::string_view text) {
  std::vector<std::string> words = words_with_commas(text);
  std::erase(words, std::string(kComma));
  return words;
}

Utterance::Utterance(std::string text_in)
    : text(std::move(text_in)), normalized(normalize(text)) {}

const std::vector<ParamRule>& Lexicon::rules_for(std::string_view action) const {
  static const std::vector<ParamRule> none;
  auto it = rules_.find(action);
  return it == rules_.end() ? none : it->second;
}

void Lexicon::add_verb(VerbEntry entry) {
  for (const VerbEntry& existing : verbs_) {
    if (existing.trigger == entry.trigger) {
      throw std::invalid_argument("duplicate trigger phrase '" +
                                  detail::join(entry.trigger) + "'");
    }
  }
  if (entry.trigger.empty()) throw std::invalid_argument("empty trigger phrase");
  verbs_.push_back(std::move(entry));
}

void Lexicon::add_rule(std::string action, ParamRule rule) {
  rules_[std::move(action)].push_back(std::move(rule));
}

void Lexicon::add_connective(Connective connective) {
  if (connective.words.empty()) throw std::invalid_argument("empty connective");
  connectives_.push_back(std::move(connective));
  // Longest first, so "and then" is preferred over "and".
  std::stable_sort(connectives_.begin(), connectives_.end(),
                   [](const Connective& a, const Connective& b) {
                     return a.words.size() > b.words.size();
                   });
}

void Lexicon::add_filler(std::string word) { fillers_.insert(std::move(word)); }

std::size_t Lexicon::remove_verbs_for(std::string_view action) {
  return std::erase_if(verbs_, [&](const VerbEntry& e) { return e.action == action; });
}

std::vector<std::string> Lexicon::check(const ActionRegistry& registry) const {
  std::vector<std::string> problems;
  for (const VerbEntry& entry : verbs_) {
    if (!registry.lookup(entry.action)) {
      problems.push_back("trigger '" + detail::join(entry.trigger) +
                         "' names unknown action '" + entry.action + "'");
    }
  }
  for (const auto& [action, rules] : rules_) {
    const ActionSchema* schema = registry.lookup(action);
    if (!schema) {
      problems.push_back("param rules for unknown action '" + action + "'");
      continue;
    }
    for (const ParamRule& rule : rules) {
      if (!schema->resolve(rule.param)) {
        problems.push_back("action '" + action + "' has no param '" + rule.param + "'");
      }
    }
  }
  return problems;
}

Lexicon load_lexicon(std::string_view text, const ActionRegistry& registry) {
  enum class Section { None, Verbs, Params, Connectives, Fillers };
  Section section = Section::None;
  std::string param_action;
  Lexicon lexicon;

  std::size_t line_no = 0;
  for (std::string_view raw_line : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::strip_comment(raw_line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigParseError(line_no, "unterminated section header");
      std::string_view name = detail::trim(line.substr(1, line.size() - 2));
      if (name == "verbs") {
        section = Section::Verbs;
      } else if (name == "connectives") {
        section = Section::Connectives;
      } else if (name == "fillers") {
        section = Section::Fillers;
      } else if (name.starts_with("params.")) {
        section = Section::Params;
        param_action = std::string(name.substr(7));
        if (!registry.lookup(param_action)) {
          throw ConfigParseError(line_no, "unknown action '" + param_action + "'");
        }
      } else {
        throw ConfigParseError(line_no, "unknown section [" + std::string(name) + "]");
      }
      continue;
    }

    switch (section) {
      case Section::None:
        throw ConfigParseError(line_no, "entry outside of a section");
      case Section::Verbs: {
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigParseError(line_no, "expected 'trigger = action'");
        std::vector<std::string> trigger = parse_phrase(line.substr(0, eq), line_no, true);
        std::string action(detail::trim(line.substr(eq + 1)));
        if (trigger.empty()) throw ConfigParseError(line_no, "empty trigger phrase");
        if (!registry.lookup(action)) throw ConfigParseError(line_no, "unknown action '" + action + "'");
        try {
          lexicon.add_verb({std::move(trigger), std::move(action)});
        } catch (const std::invalid_argument& e) {
          throw ConfigParseError(line_no, e.what());
        }
        break;
      }
      case Section::Params: {
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigParseError(line_no, "expected 'cue = param'");
        std::string_view cue_text = detail::trim(line.substr(0, eq));
        std::string_view param = detail::trim(line.substr(eq + 1));
        ParamRule rule;
        if (cue_text != "_") rule.cue = parse_phrase(cue_text, line_no, false);
        if (rule.cue.empty() && cue_text != "_") throw ConfigParseError(line_no, "empty cue");
        if (param.ends_with('*')) {
          rule.rest_of_clause = true;
          param.remove_suffix(1);
        }
        rule.param = std::string(param);
        if (!registry.lookup(param_action)->resolve(rule.param)) {
          throw ConfigParseError(line_no, "action '" + param_action + "' has no param '" +
                                              rule.param + "'");
        }
        lexicon.add_rule(param_action, std::move(rule));
        break;
      }
      case Section::Connectives: {
        Connective connective;
        if (line.front() == '~') {
          connective.soft = true;
          line.remove_prefix(1);
        }
        for (const std::string& raw : detail::split_words(line)) {
          if (raw == kComma) {
            connective.words.push_back(raw);
          } else {
            auto words = parse_phrase(raw, line_no, false);
            connective.words.insert(connective.words.end(), words.begin(), words.end());
          }
        }
        if (connective.words.empty()) throw ConfigParseError(line_no, "empty connective");
        lexicon.add_connective(std::move(connective));
        break;
      }
      case Section::Fillers:
        for (std::string& word : parse_phrase(line, line_no, false)) {
          lexicon.add_filler(std::move(word));
        }
        break;
    }
  }
  return lexicon;
}

Lexicon default_lexicon(const ActionRegistry& registry) {
  return load_lexicon(default_lexicon_text(), registry);
}

std::vector<std::vector<std::string>> split_clauses(std::string_view text,
                                                    const Lexicon& lexicon) {
  const std::vector<std::string> words = words_with_commas(text);

  struct Piece {
    const Connective* joined_by = nullptr;  // connective before this piece
    std::vector<std::string> words;
  };
  std::vector<Piece> pieces(1);
  for (std::size_t i = 0; i < words.size();) {
    const Connective* hit = nullptr;
    for (const Connective& c : lexicon.connectives()) {
      if (matches_at(words, i, c.words)) {
        hit = &c;
        break;
      }
    }
    if (hit) {
      pieces.push_back({hit, {}});
      i += hit->words.size();
    } else {
      pieces.back().words.push_back(words[i]);
      ++i;
    }
  }

  std::vector<std::vector<std::string>> clauses;
  std::vector<std::string> current = std::move(pieces.front().words);
  for (std::size_t p = 1; p < pieces.size(); ++p) {
    Piece& piece = pieces[p];
    bool split = !piece.joined_by->soft ||
                 (!current.empty() && starts_with_verb(piece.words, lexicon));
    if (split) {
      clauses.push_back(std::move(current));
      current = std::move(piece.words);
    } else {
      for (const std::string& w : piece.joined_by->words) {
        if (w != kComma) current.push_back(w);
      }
      current.insert(current.end(), piece.words.begin(), piece.words.end());
    }
  }
  std::erase(current, std::string(kComma));
  clauses.push_back(std::move(current));
  for (auto& clause : clauses) std::erase(clause, std::string(kComma));
  return clauses;
}

SequenceNode translate(const Utterance& utterance, const Lexicon& lexicon,
                       const ActionRegistry& registry) {
  SequenceNode tree;
  std::size_t var = 0;
  const auto clauses = split_clauses(utterance.text, lexicon);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const std::vector<std::string>& words = clauses[c];
    auto verb = match_verb(words, lexicon, c);
    if (!verb) {
      throw TranslateError(TranslateErrorKind::NoVerbMatch, c,
                           "clause " + std::to_string(c + 1) + " ('" +
                               detail::join(words) + "') matches no action");
    }
    ActionNode action;
    action.name = verb->entry->action;
    const ActionSchema* schema = registry.lookup(action.name);
    const auto& rules = lexicon.rules_for(action.name);
    std::set<std::string, std::less<>> filled;

    auto capture = [&](const ParamRule& rule, std::size_t from) -> std::size_t {
      std::vector<std::string> value;
      std::size_t i = from;
      if (rule.rest_of_clause) {
        while (i < words.size() && !cue_at(words, i, rules)) value.push_back(words[i++]);
      } else {
        while (i < words.size() && lexicon.fillers().count(words[i]) &&
               !cue_at(words, i, rules)) {
          ++i;
        }
        if (i < words.size() && !cue_at(words, i, rules)) value.push_back(words[i++]);
      }
      std::string canonical = rule.param;
      if (schema) {
        if (auto resolved = schema->resolve(rule.param)) canonical = *resolved;
      }
      if (!value.empty() && filled.insert(canonical).second) {
        action.params.push_back({rule.param, var++, detail::join(value)});
      }
      return i;
    };

    std::size_t i = verb->end;
    const ParamRule* direct = empty_cue_rule(rules);
    if (direct && !cue_at(words, i, rules)) i = capture(*direct, i);
    while (i < words.size()) {
      if (const ParamRule* rule = cue_at(words, i, rules)) {
        i = capture(*rule, i + rule->cue.size());
      } else {
        ++i;
      }
    }
    tree.actions.push_back(std::move(action));
  }
  return tree;
}

}  // namespace nl2bt
