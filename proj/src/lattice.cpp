#include "pseq/lattice.hpp"

#include "pseq/errors.hpp"

#include <algorithm>

namespace pseq {

LatticeFunction LatticeFunction::periodic(BigInt period, std::vector<Entry> entries) {
  if (period < 1) throw Error(ErrorKind::InvalidArgument, "period must be >= 1");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first < 0 || entries[i].first >= period)
      throw Error(ErrorKind::InvalidArgument, "periodic entry residue out of range");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw Error(ErrorKind::InvalidArgument, "duplicate residue in periodic lattice function");
  }
  LatticeFunction f;
  f.periodic_ = true;
  f.period_ = std::move(period);
  f.entries_ = std::move(entries);
  return f;
}

LatticeFunction LatticeFunction::finite(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw Error(ErrorKind::InvalidArgument, "duplicate support point in lattice function");
  LatticeFunction f;
  f.entries_ = std::move(entries);
  return f;
}

LatticeFunction LatticeFunction::constant(const Real& value) {
  return periodic(BigInt(1), {{BigInt(0), value}});
}

Real LatticeFunction::operator()(const BigInt& n) const {
  BigInt key = periodic_ ? mod_floor(n, period_) : n;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const Entry& e, const BigInt& k) { return e.first < k; });
  if (it != entries_.end() && it->first == key) return it->second;
  return Real(0);
}

Real LatticeFunction::sup() const {
  Real m = 0;
  for (const auto& e : entries_) m = std::max(m, Real(boost::multiprecision::abs(e.second)));
  return m;
}

}  // namespace pseq
