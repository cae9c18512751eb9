#include "nl2bt/errors.hpp"

#include <utility>

namespace nl2bt {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::Syntax:
      return "SyntaxError";
    case ParseErrorKind::TrailingTokens:
      return "TrailingTokens";
    case ParseErrorKind::InvalidName:
      return "InvalidName";
    case ParseErrorKind::BadVariable:
      return "BadVariable";
    case ParseErrorKind::EmptyValue:
      return "EmptyValue";
  }
  return "ParseError";
}

namespace {

std::string describe_parse_error(ParseErrorKind kind, std::size_t position,
                                 const std::string& expected,
                                 const std::string& found) {
  std::string msg = to_string(kind);
  msg += " at token ";
  msg += std::to_string(position);
  if (!expected.empty()) {
    msg += ": expected " + expected;
    msg += ", found " + found;
  } else if (!found.empty()) {
    msg += ": " + found;
  }
  return msg;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t position,
                       std::string expected, std::string found)
    : Error(describe_parse_error(kind, position, expected, found)),
      kind_(kind),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ConfigParseError::ConfigParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

XmlError::XmlError(XmlErrorKind kind, std::size_t line,
                   const std::string& message)
    : Error(std::string(kind == XmlErrorKind::Shape ? "XmlShapeError"
                                                    : "XmlSyntaxError") +
            (line ? " at line " + std::to_string(line) : std::string()) +
            ": " + message),
      kind_(kind),
      line_(line) {}

TranslateError::TranslateError(TranslateErrorKind kind, std::size_t clause,
                               const std::string& message)
    : Error(message), kind_(kind), clause_(clause) {}

FormatError::FormatError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace nl2bt
