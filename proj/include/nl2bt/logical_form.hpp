#pragma once

// Logical forms: the `( seq ( action ( param ( $n ( value ) ) ) ) )` language.
//
//   SEQ    := "(" "seq" ACTION* ")"
//   ACTION := "(" name PARAM* ")"
//   PARAM  := "(" name "(" "$" INT "(" VALUE_TOKEN+ ")" ")" ")"
//
// Every token is separated by whitespace; there is no character-level lexing.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nl2bt/errors.hpp"

namespace nl2bt {

struct Token {
  std::string lexeme;
  std::size_t position = 0;

  bool operator==(const Token&) const = default;
};

// Splits on runs of space, tab, CR and LF. Never fails.
std::vector<Token> tokenize(std::string_view text);

// Read cursor over a token stream. Borrowed: the tokens must outlive it.
class TokenCursor {
 public:
  explicit TokenCursor(std::span<const Token> tokens) : tokens_(tokens) {}

  bool at_end() const { return index_ >= tokens_.size(); }
  std::size_t index() const { return index_; }
  std::size_t size() const { return tokens_.size(); }

  // Precondition: !at_end().
  const Token& current() const { return tokens_[index_]; }

  // Lexeme at offset `ahead` from the cursor, or empty when past the end.
  std::string_view peek(std::size_t ahead = 0) const;

  void skip() {
    if (index_ < tokens_.size()) ++index_;
  }

 private:
  std::span<const Token> tokens_;
  std::size_t index_ = 0;
};

struct ParamNode {
  std::string name;
  std::size_t var_index = 0;
  std::string value;  // value tokens joined by single spaces

  bool operator==(const ParamNode&) const = default;
};

struct ActionNode {
  std::string name;
  std::vector<ParamNode> params;

  bool operator==(const ActionNode&) const = default;
};

struct SequenceNode {
  std::vector<ActionNode> actions;

  bool operator==(const SequenceNode&) const = default;
};

SequenceNode parse_sequence(TokenCursor& cursor);
ActionNode parse_action(TokenCursor& cursor);
ParamNode parse_parameter(TokenCursor& cursor);

// Whole-string entry point: tokenize, parse one sequence, reject leftovers.
SequenceNode parse_logical_form(std::string_view text);

// Canonical text. `$` indices are always rewritten as 0, 1, 2, ... in order.
std::string render(const SequenceNode& node);

// Rewrites var_index of every parameter to its sequence-global position.
SequenceNode renumber(SequenceNode node);

// Parses and re-renders, yielding the canonical surface form of `text`.
std::string canonicalize(std::string_view text);

}  // namespace nl2bt
