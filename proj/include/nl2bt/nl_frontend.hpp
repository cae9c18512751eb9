#pragma once

// Deterministic natural-language frontend. A lexicon file drives everything:
//
//   [verbs]                 trigger phrase = action      ('*' matches any one word)
//   go through the gate = gate
//   [params.flatten]        cue = param   (one word)  |  cue = param*  (rest of clause)
//   at = num                '_' is the empty cue: the words right after the verb
//   [connectives]           one per line; a leading '~' marks a soft connective
//   then                    that splits only when the next clause starts with a verb
//   ~and
//   [fillers]               words skipped before a one-word value
//   the a an
//
// `#` starts a comment.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nl2bt/action_registry.hpp"
#include "nl2bt/logical_form.hpp"

namespace nl2bt {

// Lowercases, strips punctuation around words, collapses whitespace. Numbers
// such as "-1.5" survive intact. Idempotent.
std::vector<std::string> normalize(std::string_view text);

struct Utterance {
  std::string text;
  std::vector<std::string> normalized;

  explicit Utterance(std::string text_in);
};

struct VerbEntry {
  std::vector<std::string> trigger;
  std::string action;
};

struct ParamRule {
  std::vector<std::string> cue;  // empty: value follows the verb directly
  std::string param;
  bool rest_of_clause = false;
};

struct Connective {
  std::vector<std::string> words;
  bool soft = false;
};

class Lexicon {
 public:
  const std::vector<VerbEntry>& verbs() const { return verbs_; }
  const std::vector<ParamRule>& rules_for(std::string_view action) const;
  const std::vector<Connective>& connectives() const { return connectives_; }
  const std::set<std::string, std::less<>>& fillers() const { return fillers_; }

  // Throws std::invalid_argument if the trigger phrase is already present.
  void add_verb(VerbEntry entry);
  void add_rule(std::string action, ParamRule rule);
  void add_connective(Connective connective);
  void add_filler(std::string word);

  // Removes every trigger for `action`; returns how many were removed.
  std::size_t remove_verbs_for(std::string_view action);

  // Error messages for actions or params the registry does not know.
  std::vector<std::string> check(const ActionRegistry& registry) const;

 private:
  std::vector<VerbEntry> verbs_;
  std::map<std::string, std::vector<ParamRule>, std::less<>> rules_;
  std::vector<Connective> connectives_;
  std::set<std::string, std::less<>> fillers_;
};

// Throws ConfigParseError on malformed lines, duplicate triggers, or
// references to actions/params the registry lacks.
Lexicon load_lexicon(std::string_view text, const ActionRegistry& registry);

// The lexicon shipped in data/default.lexicon.
std::string_view default_lexicon_text();
Lexicon default_lexicon(const ActionRegistry& registry);

// Splits into clauses, matches each clause's verb (leftmost, then longest),
// and fills params from the action's cue rules. `$` indices run globally.
// Throws TranslateError.
SequenceNode translate(const Utterance& utterance, const Lexicon& lexicon,
                       const ActionRegistry& registry);

// Clause word lists as translate() would see them; exposed for tests.
std::vector<std::vector<std::string>> split_clauses(std::string_view text,
                                                    const Lexicon& lexicon);

}  // namespace nl2bt
