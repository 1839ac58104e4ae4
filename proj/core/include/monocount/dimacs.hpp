#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "monocount/formula.hpp"

namespace monocount {

enum class ParseErrorKind {
  MissingHeader,
  MalformedHeader,
  DuplicateHeader,
  BadToken,
  LiteralOutOfRange,
  EmptyClause,
  UnterminatedClause,
  ClauseCountMismatch,
};

const char* to_string(ParseErrorKind kind) noexcept;

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number where the problem was detected.
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// Reads DIMACS CNF. Comment lines start with 'c'; a line "c provenance ..."
/// as written by emit_dimacs restores Formula::provenance(). Clauses may span
/// lines and are whitespace-agnostic. A line consisting of '%' ends input.
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(std::string_view text);

/// Writes "p cnf n m" and one zero-terminated clause per line. Provenance, if
/// present, is written as a leading comment line.
void emit_dimacs(const Formula& formula, std::ostream& out);
std::string emit_dimacs(const Formula& formula);

}  // namespace monocount
