#include "monocount/formula.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace monocount {

namespace {

void sort_unique(std::vector<VarId>& vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

bool intersects(const std::vector<VarId>& a, const std::vector<VarId>& b) noexcept {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

std::size_t words_for(std::uint32_t n) { return (static_cast<std::size_t>(n) + 64) / 64; }

}  // namespace

Clause::Clause(std::vector<VarId> pos, std::vector<VarId> neg)
    : pos_(std::move(pos)), neg_(std::move(neg)) {
  sort_unique(pos_);
  sort_unique(neg_);
  tautological_ = intersects(pos_, neg_);
}

Clause Clause::from_literals(std::span<const int> literals) {
  std::vector<VarId> pos;
  std::vector<VarId> neg;
  for (int lit : literals) {
    if (lit == 0) throw std::invalid_argument("literal 0 is not a valid literal");
    const auto v = var(static_cast<std::uint32_t>(std::abs(static_cast<long long>(lit))));
    (lit > 0 ? pos : neg).push_back(v);
  }
  return Clause(std::move(pos), std::move(neg));
}

std::uint32_t Clause::max_var() const noexcept {
  std::uint32_t m = 0;
  if (!pos_.empty()) m = std::max(m, index_of(pos_.back()));
  if (!neg_.empty()) m = std::max(m, index_of(neg_.back()));
  return m;
}

std::vector<int> Clause::literals() const {
  std::vector<int> out;
  out.reserve(size());
  auto i = pos_.begin();
  auto j = neg_.begin();
  while (i != pos_.end() || j != neg_.end()) {
    if (j != neg_.end() && (i == pos_.end() || *j <= *i)) {
      out.push_back(-static_cast<int>(index_of(*j++)));
    } else {
      out.push_back(static_cast<int>(index_of(*i++)));
    }
  }
  return out;
}

Formula::Formula(std::uint32_t n, std::vector<Clause> clauses,
                 std::optional<Provenance> provenance)
    : n_(n), clauses_(std::move(clauses)), provenance_(std::move(provenance)) {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    if (c.empty()) {
      throw std::invalid_argument("clause " + std::to_string(i + 1) + " is empty");
    }
    const bool zero_var = (!c.pos().empty() && index_of(c.pos().front()) == 0) ||
                          (!c.neg().empty() && index_of(c.neg().front()) == 0);
    if (zero_var || c.max_var() > n_) {
      throw std::invalid_argument("clause " + std::to_string(i + 1) +
                                  " mentions a variable outside [1, " + std::to_string(n_) +
                                  "]");
    }
  }
}

std::size_t Formula::num_tautological() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(clauses_.begin(), clauses_.end(),
                    [](const Clause& c) { return c.tautological(); }));
}

bool conflicts(const Clause& a, const Clause& b) noexcept {
  return intersects(a.pos(), b.neg()) || intersects(a.neg(), b.pos());
}

SignedVarSet::SignedVarSet(std::uint32_t n)
    : n_(n), pos_(words_for(n), 0), neg_(words_for(n), 0) {}

bool SignedVarSet::compatible(const Clause& c) const noexcept {
  if (c.tautological()) return false;
  for (VarId v : c.pos()) {
    if (has_neg(v)) return false;
  }
  for (VarId v : c.neg()) {
    if (has_pos(v)) return false;
  }
  return true;
}

bool SignedVarSet::compatible(std::span<const Literal> lits) const noexcept {
  for (const Literal& l : lits) {
    if (l.negated ? has_pos(l.var) : has_neg(l.var)) return false;
  }
  return true;
}

std::size_t SignedVarSet::merge(const Clause& c) {
  if (!compatible(c)) throw std::logic_error("merging an incompatible clause");
  std::size_t added = 0;
  for (VarId v : c.pos()) added += set(pos_, v);
  for (VarId v : c.neg()) added += set(neg_, v);
  size_ += added;
  return added;
}

std::size_t SignedVarSet::merge(std::span<const Literal> lits) {
  if (!compatible(lits)) throw std::logic_error("merging an incompatible clause");
  std::size_t added = 0;
  for (const Literal& l : lits) added += set(l.negated ? neg_ : pos_, l.var);
  size_ += added;
  return added;
}

void SignedVarSet::clear() {
  std::fill(pos_.begin(), pos_.end(), 0);
  std::fill(neg_.begin(), neg_.end(), 0);
  size_ = 0;
}

}  // namespace monocount
