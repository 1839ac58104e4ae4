#include "monocount/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace monocount {

namespace {

constexpr std::string_view kProvenanceTag = "provenance";

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_double(std::string_view tok, double& out) {
  const std::string s(tok);
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return !s.empty() && end == s.c_str() + s.size();
}

// "c provenance seed=.. delta=.. lambda=.. k_min=.. k_max=.. distinct=.."
std::optional<Provenance> parse_provenance(const std::vector<std::string_view>& toks) {
  if (toks.size() < 2 || toks[0] != "c" || toks[1] != kProvenanceTag) return std::nullopt;
  Provenance p;
  int seen = 0;
  for (std::size_t i = 2; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    const auto key = toks[i].substr(0, eq);
    const auto val = toks[i].substr(eq + 1);
    bool ok = false;
    if (key == "seed") {
      ok = parse_number(val, p.seed);
    } else if (key == "delta") {
      ok = parse_double(val, p.delta);
    } else if (key == "lambda") {
      ok = parse_double(val, p.lambda);
    } else if (key == "k_min") {
      ok = parse_number(val, p.k_min);
    } else if (key == "k_max") {
      ok = parse_number(val, p.k_max);
    } else if (key == "distinct") {
      int d = 0;
      ok = parse_number(val, d) && (d == 0 || d == 1);
      p.distinct = d == 1;
    }
    if (!ok) return std::nullopt;
    ++seen;
  }
  if (seen != 6) return std::nullopt;
  return p;
}

}  // namespace

const char* to_string(ParseErrorKind kind) noexcept {
  switch (kind) {
    case ParseErrorKind::MissingHeader: return "missing header";
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::DuplicateHeader: return "duplicate header";
    case ParseErrorKind::BadToken: return "bad token";
    case ParseErrorKind::LiteralOutOfRange: return "literal out of range";
    case ParseErrorKind::EmptyClause: return "empty clause";
    case ParseErrorKind::UnterminatedClause: return "unterminated clause";
    case ParseErrorKind::ClauseCountMismatch: return "clause count mismatch";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(fmt::format("line {}: {}: {}", line, to_string(kind), detail)),
      kind_(kind),
      line_(line) {}

Formula parse_dimacs(std::istream& in) {
  bool have_header = false;
  std::uint32_t n = 0;
  std::size_t m = 0;
  std::optional<Provenance> provenance;
  std::vector<Clause> clauses;
  std::vector<int> current;
  std::size_t clause_line = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0].front() == 'c') {
      if (auto p = parse_provenance(toks)) provenance = *p;
      continue;
    }
    if (toks[0] == "%") break;
    if (toks[0].front() == 'p') {
      if (have_header) throw ParseError(ParseErrorKind::DuplicateHeader, line_no, "second 'p' line");
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf" || !parse_number(toks[2], n) ||
          !parse_number(toks[3], m)) {
        throw ParseError(ParseErrorKind::MalformedHeader, line_no,
                         fmt::format("expected 'p cnf <n> <m>', got '{}'", line));
      }
      if (n > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
        throw ParseError(ParseErrorKind::MalformedHeader, line_no, "variable count too large");
      }
      have_header = true;
      clauses.reserve(m);
      continue;
    }
    if (!have_header) {
      throw ParseError(ParseErrorKind::MissingHeader, line_no, "clause data before 'p cnf' line");
    }
    for (auto tok : toks) {
      long long lit = 0;
      if (!parse_number(tok, lit)) {
        throw ParseError(ParseErrorKind::BadToken, line_no, fmt::format("'{}' is not an integer", tok));
      }
      if (lit == 0) {
        if (current.empty()) {
          throw ParseError(ParseErrorKind::EmptyClause, line_no, "clause with no literals");
        }
        if (clauses.size() == m) {
          throw ParseError(ParseErrorKind::ClauseCountMismatch, clause_line,
                           fmt::format("more than the {} clauses declared", m));
        }
        clauses.push_back(Clause::from_literals(current));
        current.clear();
        continue;
      }
      if (std::llabs(lit) > static_cast<long long>(n)) {
        throw ParseError(ParseErrorKind::LiteralOutOfRange, line_no,
                         fmt::format("literal {} exceeds n = {}", lit, n));
      }
      if (current.empty()) clause_line = line_no;
      current.push_back(static_cast<int>(lit));
    }
  }

  if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, line_no, "no 'p cnf' line");
  if (!current.empty()) {
    throw ParseError(ParseErrorKind::UnterminatedClause, clause_line, "clause not terminated by 0");
  }
  if (clauses.size() != m) {
    throw ParseError(ParseErrorKind::ClauseCountMismatch, line_no,
                     fmt::format("header declares {} clauses, found {}", m, clauses.size()));
  }
  return Formula(n, std::move(clauses), provenance);
}

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

void emit_dimacs(const Formula& formula, std::ostream& out) {
  if (const auto& p = formula.provenance()) {
    out << fmt::format("c {} seed={} delta={} lambda={} k_min={} k_max={} distinct={}\n",
                       kProvenanceTag, p->seed, p->delta, p->lambda, p->k_min, p->k_max,
                       p->distinct ? 1 : 0);
  }
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  std::string buf;
  for (const Clause& c : formula.clauses()) {
    buf.clear();
    for (int lit : c.literals()) {
      fmt::format_to(std::back_inserter(buf), "{} ", lit);
    }
    buf += "0\n";
    out << buf;
  }
}

std::string emit_dimacs(const Formula& formula) {
  std::ostringstream out;
  emit_dimacs(formula, out);
  return out.str();
}

}  // namespace monocount
