#include "monocount/ledger.hpp"

#include <ostream>
#include <sstream>

namespace monocount {

void Ledger::add(std::uint32_t nu, bool odd_size, const BigCount& count) {
  if (nu < 1 || nu > n_) throw std::out_of_range("Ledger::add: nu outside [1, n]");
  if (count < 0) throw std::invalid_argument("Ledger::add: negative count");
  if (count == 0) return;
  auto& e = entries_[nu];
  (odd_size ? e.odd : e.even) += count;
}

void Ledger::merge(const Ledger& other) {
  if (other.n_ != n_) throw std::invalid_argument("Ledger::merge: variable counts differ");
  for (const auto& [nu, e] : other.entries_) {
    auto& mine = entries_[nu];
    mine.odd += e.odd;
    mine.even += e.even;
  }
}

Ledger::Entry Ledger::at(std::uint32_t nu) const {
  const auto it = entries_.find(nu);
  return it == entries_.end() ? Entry{} : it->second;
}

BigCount Ledger::total() const {
  BigCount t = 0;
  for (const auto& [nu, e] : entries_) t += e.odd + e.even;
  return t;
}

void Ledger::write_csv(std::ostream& out) const {
  out << "nu,O,E\n";
  for (const auto& [nu, e] : entries_) out << nu << ',' << e.odd << ',' << e.even << '\n';
}

std::string Ledger::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

}  // namespace monocount
