#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace monocount {

/// 1-based variable index, as in DIMACS.
enum class VarId : std::uint32_t {};

constexpr std::uint32_t index_of(VarId v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr VarId var(std::uint32_t index) noexcept { return static_cast<VarId>(index); }

/// One signed occurrence of a variable.
struct Literal {
  VarId var{};
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A disjunction of literals, stored as sorted, duplicate-free positive and
/// negative variable sets. A clause holding both v and -v is kept and flagged
/// tautological; such a clause never takes part in a monotone sub-formula.
class Clause {
 public:
  Clause() = default;
  Clause(std::vector<VarId> pos, std::vector<VarId> neg);

  /// Builds a clause from signed DIMACS literals (nonzero ints).
  static Clause from_literals(std::span<const int> literals);
  static Clause from_literals(std::initializer_list<int> literals) {
    return from_literals(std::span<const int>(literals.begin(), literals.size()));
  }

  const std::vector<VarId>& pos() const noexcept { return pos_; }
  const std::vector<VarId>& neg() const noexcept { return neg_; }
  bool tautological() const noexcept { return tautological_; }
  bool empty() const noexcept { return pos_.empty() && neg_.empty(); }

  /// Number of literals (|pos| + |neg|).
  std::size_t size() const noexcept { return pos_.size() + neg_.size(); }
  /// Largest variable index mentioned, 0 for the empty clause.
  std::uint32_t max_var() const noexcept;

  /// Literals in DIMACS order: ascending variable, negative literal first on ties.
  std::vector<int> literals() const;

  friend bool operator==(const Clause& a, const Clause& b) noexcept {
    return a.pos_ == b.pos_ && a.neg_ == b.neg_;
  }
  friend auto operator<=>(const Clause& a, const Clause& b) noexcept {
    if (auto c = a.pos_ <=> b.pos_; c != 0) return c;
    return a.neg_ <=> b.neg_;
  }

 private:
  std::vector<VarId> pos_;
  std::vector<VarId> neg_;
  bool tautological_ = false;
};

/// Generation parameters recorded alongside a random formula.
struct Provenance {
  std::uint64_t seed = 0;
  double delta = 1.0;
  double lambda = 1.0;
  std::uint32_t k_min = 0;
  std::uint32_t k_max = 0;
  bool distinct = false;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Ordered clause list over variables 1..n. Duplicate clauses are distinct
/// indexed members.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::uint32_t n, std::vector<Clause> clauses = {},
                   std::optional<Provenance> provenance = std::nullopt);

  std::uint32_t num_vars() const noexcept { return n_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }
  const std::optional<Provenance>& provenance() const noexcept { return provenance_; }

  std::size_t num_tautological() const noexcept;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<Clause> clauses_;
  std::optional<Provenance> provenance_;
};

/// True iff some variable occurs positively in one clause and negatively in
/// the other. A tautological clause conflicts with itself.
bool conflicts(const Clause& a, const Clause& b) noexcept;

/// The signs frozen so far by a monotone selection of clauses, as two packed
/// bit arrays over variables 1..n. pos and neg are always disjoint.
class SignedVarSet {
 public:
  SignedVarSet() = default;
  explicit SignedVarSet(std::uint32_t n);

  std::uint32_t num_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool has_pos(VarId v) const noexcept { return test(pos_, v); }
  bool has_neg(VarId v) const noexcept { return test(neg_, v); }
  bool contains(VarId v) const noexcept { return has_pos(v) || has_neg(v); }

  /// True iff merging c keeps pos and neg disjoint.
  bool compatible(const Clause& c) const noexcept;
  /// Same test for a clause given as distinct-variable literals.
  bool compatible(std::span<const Literal> lits) const noexcept;

  /// Merges a compatible clause and returns the number of new variables.
  /// Precondition: compatible(c).
  std::size_t merge(const Clause& c);
  std::size_t merge(std::span<const Literal> lits);

  void clear();

  friend bool operator==(const SignedVarSet&, const SignedVarSet&) = default;

 private:
  bool set(std::vector<std::uint64_t>& bits, VarId v) noexcept {
    const auto i = index_of(v);
    auto& word = bits[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    const bool fresh = !(word & bit);
    word |= bit;
    return fresh;
  }

  static bool test(const std::vector<std::uint64_t>& bits, VarId v) noexcept {
    const auto i = index_of(v);
    return (bits[i >> 6] >> (i & 63)) & 1U;
  }

  std::uint32_t n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> pos_;
  std::vector<std::uint64_t> neg_;
};

inline bool compatible(const SignedVarSet& crystal, const Clause& c) noexcept {
  return crystal.compatible(c);
}

}  // namespace monocount
