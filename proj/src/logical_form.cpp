#include "nl2bt/logical_form.hpp"

#include <charconv>
#include <utility>

namespace nl2bt {
namespace {

constexpr std::string_view kOpen = "(";
constexpr std::string_view kClose = ")";
constexpr std::string_view kSeq = "seq";
constexpr std::string_view kEndOfInput = "<end of input>";

bool is_separator(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

std::string found_at(const TokenCursor& cursor) {
  return cursor.at_end() ? std::string(kEndOfInput)
                         : cursor.current().lexeme;
}

[[noreturn]] void fail(ParseErrorKind kind, const TokenCursor& cursor,
                       std::string expected) {
  throw ParseError(kind, cursor.index(), std::move(expected),
                   found_at(cursor));
}

void expect(TokenCursor& cursor, std::string_view lexeme) {
  if (cursor.at_end() || cursor.current().lexeme != lexeme) {
    fail(ParseErrorKind::Syntax, cursor, "'" + std::string(lexeme) + "'");
  }
  cursor.skip();
}

// Names are any token that is not structural. Identifier style is checked
// later by the registry, not here.
std::string expect_name(TokenCursor& cursor, const char* what) {
  if (cursor.at_end()) {
    fail(ParseErrorKind::Syntax, cursor, what);
  }
  const std::string& lexeme = cursor.current().lexeme;
  if (lexeme == kOpen || lexeme == kClose || lexeme.front() == '$') {
    fail(ParseErrorKind::InvalidName, cursor, what);
  }
  std::string name = lexeme;
  cursor.skip();
  return name;
}

std::size_t parse_variable(TokenCursor& cursor) {
  if (cursor.at_end() || cursor.current().lexeme.front() != '$') {
    fail(ParseErrorKind::Syntax, cursor, "variable '$n'");
  }
  std::string_view digits = cursor.current().lexeme;
  digits.remove_prefix(1);
  // Leading zeros are rejected so that every index has one spelling.
  bool ok = !digits.empty() && (digits.size() == 1 || digits.front() != '0');
  std::size_t value = 0;
  if (ok) {
    auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    ok = ec == std::errc() && end == digits.data() + digits.size();
  }
  if (!ok) {
    fail(ParseErrorKind::BadVariable, cursor, "'$' followed by a decimal index");
  }
  cursor.skip();
  return value;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_separator(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_separator(text[i])) ++i;
    if (i > start) {
      tokens.push_back(
          Token{std::string(text.substr(start, i - start)), tokens.size()});
    }
  }
  return tokens;
}

std::string_view TokenCursor::peek(std::size_t ahead) const {
  std::size_t at = index_ + ahead;
  return at < tokens_.size() ? std::string_view(tokens_[at].lexeme)
                             : std::string_view();
}

SequenceNode parse_sequence(TokenCursor& cursor) {
  expect(cursor, kOpen);
  expect(cursor, kSeq);
  SequenceNode node;
  while (!cursor.at_end() && cursor.current().lexeme == kOpen) {
    if (cursor.peek(1) == kSeq) {
      cursor.skip();
      fail(ParseErrorKind::Syntax, cursor,
           "action name (nested sequences are not permitted)");
    }
    node.actions.push_back(parse_action(cursor));
  }
  expect(cursor, kClose);
  return node;
}

ActionNode parse_action(TokenCursor& cursor) {
  expect(cursor, kOpen);
  ActionNode node;
  node.name = expect_name(cursor, "action name");
  while (!cursor.at_end() && cursor.current().lexeme == kOpen) {
    node.params.push_back(parse_parameter(cursor));
  }
  expect(cursor, kClose);
  return node;
}

ParamNode parse_parameter(TokenCursor& cursor) {
  expect(cursor, kOpen);
  ParamNode node;
  node.name = expect_name(cursor, "parameter name");
  expect(cursor, kOpen);
  node.var_index = parse_variable(cursor);
  expect(cursor, kOpen);
  std::size_t value_start = cursor.index();
  while (!cursor.at_end() && cursor.current().lexeme != kClose) {
    if (cursor.current().lexeme == kOpen) {
      fail(ParseErrorKind::Syntax, cursor, "value token or ')'");
    }
    if (!node.value.empty()) node.value += ' ';
    node.value += cursor.current().lexeme;
    cursor.skip();
  }
  if (cursor.at_end()) {
    fail(ParseErrorKind::Syntax, cursor, "')'");
  }
  if (cursor.index() == value_start) {
    fail(ParseErrorKind::EmptyValue, cursor, "value token");
  }
  expect(cursor, kClose);
  expect(cursor, kClose);
  expect(cursor, kClose);
  return node;
}

SequenceNode parse_logical_form(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  TokenCursor cursor(tokens);
  SequenceNode node = parse_sequence(cursor);
  if (!cursor.at_end()) {
    throw ParseError(ParseErrorKind::TrailingTokens, cursor.index(),
                     std::string(kEndOfInput), cursor.current().lexeme);
  }
  return node;
}

std::string render(const SequenceNode& node) {
  std::string out = "( seq";
  std::size_t var = 0;
  for (const ActionNode& action : node.actions) {
    out += " ( ";
    out += action.name;
    for (const ParamNode& param : action.params) {
      out += " ( ";
      out += param.name;
      out += " ( $";
      out += std::to_string(var++);
      out += " ( ";
      out += param.value;
      out += " ) ) )";
    }
    out += " )";
  }
  out += " )";
  return out;
}

SequenceNode renumber(SequenceNode node) {
  std::size_t var = 0;
  for (ActionNode& action : node.actions) {
    for (ParamNode& param : action.params) param.var_index = var++;
  }
  return node;
}

std::string canonicalize(std::string_view text) {
  return render(parse_logical_form(text));
}

}  // namespace nl2bt
