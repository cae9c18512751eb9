#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nl2bt {

// Root of every error the toolchain throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
  Syntax,
  TrailingTokens,
  InvalidName,
  BadVariable,
  EmptyValue,
};

const char* to_string(ParseErrorKind kind);

// Logical-form parse failure. `position` is the zero-based token index;
// an index equal to the token count means "end of input".
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, std::string expected,
             std::string found);

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

// Malformed registry or lexicon line (1-based line number).
class ConfigParseError : public Error {
 public:
  ConfigParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmitError : public Error {
 public:
  using Error::Error;
};

enum class XmlErrorKind { Syntax, Shape };

// Failure reading a behavior-tree document. `line` is 1-based, 0 if unknown.
class XmlError : public Error {
 public:
  XmlError(XmlErrorKind kind, std::size_t line, const std::string& message);
  XmlErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  XmlErrorKind kind_;
  std::size_t line_;
};

enum class TranslateErrorKind { NoVerbMatch, AmbiguousMatch };

// Natural-language translation failure; `clause` is the zero-based clause index.
class TranslateError : public Error {
 public:
  TranslateError(TranslateErrorKind kind, std::size_t clause,
                 const std::string& message);
  TranslateErrorKind kind() const { return kind_; }
  std::size_t clause() const { return clause_; }

 private:
  TranslateErrorKind kind_;
  std::size_t clause_;
};

// Corpus TSV problem (1-based line number).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InsufficientSpace : public Error {
 public:
  using Error::Error;
};

}  // namespace nl2bt
