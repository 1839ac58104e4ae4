#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace monocount {

/// Exact signed integer.
using BigInt = boost::multiprecision::cpp_int;
/// Exact non-negative model or assignment count (held in a BigInt).
using BigCount = boost::multiprecision::cpp_int;

/// 2^e as a BigInt.
inline BigInt pow2(std::uint32_t e) { return BigInt(1) << e; }

/// Raised when exact arithmetic contradicts a structural invariant, e.g. an
/// unsatisfying-assignment count outside [0, 2^n].
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Tally of monotone sub-formulae by variable count nu and clause-count
/// parity: odd sizes go to O_nu, even sizes to E_nu. Entries with both
/// counts zero are never stored.
class Ledger {
 public:
  struct Entry {
    BigCount odd;
    BigCount even;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Ledger() = default;
  explicit Ledger(std::uint32_t n) : n_(n) {}

  std::uint32_t num_vars() const noexcept { return n_; }
  const std::map<std::uint32_t, Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Adds `count` sub-formulae with nu variables and the given parity.
  void add(std::uint32_t nu, bool odd_size, const BigCount& count = 1);
  void merge(const Ledger& other);

  /// O_nu and E_nu (zero when absent).
  Entry at(std::uint32_t nu) const;

  /// Sum of O_nu + E_nu over all nu.
  BigCount total() const;

  /// CSV with header "nu,O,E", one row per stored nu in ascending order.
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

  friend bool operator==(const Ledger&, const Ledger&) = default;

 private:
  std::uint32_t n_ = 0;
  std::map<std::uint32_t, Entry> entries_;
};

}  // namespace monocount
