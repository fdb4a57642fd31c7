#include "pseq/base_sequence.hpp"

#include "pseq/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace pseq {

std::vector<BigInt> IntegerSet::residue_profile(const BigInt& lo, const BigInt& hi, std::uint64_t m) const {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "residue profile modulus must be positive");
  std::vector<BigInt> out(m);
  BigInt bm(m);
  for (std::uint64_t r = 0; r < m; ++r) out[r] = count_in_residue(lo, hi, BigInt(r), bm);
  return out;
}

std::vector<BigInt> IntegerSet::elements_in(const BigInt& lo, const BigInt& hi, std::size_t limit) const {
  std::vector<BigInt> out;
  bool overflow = false;
  for_each_in(lo, hi, [&](const BigInt& x) {
    if (out.size() == limit) {
      overflow = true;
      return false;
    }
    out.push_back(x);
    return true;
  });
  if (overflow)
    throw Error(ErrorKind::ResourceLimit, "more than " + std::to_string(limit) + " elements in [" + to_string(lo) +
                                              ", " + to_string(hi) + ")");
  return out;
}

std::vector<BigInt> IntegerSet::first_elements(const BigInt& lo, const BigInt& hi, std::size_t limit) const {
  std::vector<BigInt> out;
  if (limit == 0) return out;
  for_each_in(lo, hi, [&](const BigInt& x) {
    out.push_back(x);
    return out.size() < limit;
  });
  return out;
}

namespace {

constexpr std::uint64_t kMaxRootTable = std::uint64_t{1} << 22;

// Sorted (x^2 mod m, x) pairs for x in [0, m).
const std::vector<std::pair<std::uint64_t, std::uint64_t>>& square_root_table(std::uint64_t m) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> table;
  table.reserve(m);
  for (std::uint64_t x = 0; x < m; ++x) {
    unsigned __int128 sq = static_cast<unsigned __int128>(x) * x;
    table.emplace_back(static_cast<std::uint64_t>(sq % m), x);
  }
  std::sort(table.begin(), table.end());
  return cache.emplace(m, std::move(table)).first->second;
}

class Squares final : public BaseSequence {
 public:
  SequenceKind kind() const override { return SequenceKind::Squares; }
  std::string name() const override { return "squares"; }
  BigInt element(const BigInt& index) const override { return index * index; }
  bool record_ratios_monotone() const override { return true; }

  BigInt count(const BigInt& n) const override { return n <= 1 ? BigInt(0) : isqrt(n - 1); }

  bool contains(const BigInt& x) const override {
    if (x < 1) return false;
    BigInt r = isqrt(x);
    return r * r == x;
  }

  BigInt count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) const override {
    BigInt xlo = ceil_sqrt(lo < 1 ? BigInt(1) : lo);
    BigInt xhi = ceil_sqrt(hi);
    if (xhi <= xlo) return 0;
    if (m == 1) return xhi - xlo;
    if (m > kMaxRootTable && xhi - xlo <= kMaxRootTable) {
      BigInt total = 0, rr = mod_floor(r, m);
      for (BigInt x = xlo; x < xhi; ++x)
        if (mod_floor(x * x, m) == rr) ++total;
      return total;
    }
    if (m > kMaxRootTable)
      throw Error(ErrorKind::ResourceLimit, "square residue table for modulus " + to_string(m) + " exceeds cap");
    auto mm = m.convert_to<std::uint64_t>();
    auto rr = mod_floor(r, m).convert_to<std::uint64_t>();
    const auto& table = square_root_table(mm);
    auto range = std::equal_range(table.begin(), table.end(), std::pair<std::uint64_t, std::uint64_t>{rr, 0},
                                  [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt total = 0;
    for (auto it = range.first; it != range.second; ++it) total += count_congruent(xlo, xhi, BigInt(it->second), m);
    return total;
  }

  std::vector<BigInt> residue_profile(const BigInt& lo, const BigInt& hi, std::uint64_t m) const override {
    std::vector<BigInt> out(m);
    BigInt xlo = ceil_sqrt(lo < 1 ? BigInt(1) : lo);
    BigInt xhi = ceil_sqrt(hi);
    if (xhi <= xlo) return out;
    BigInt bm(m);
    for (std::uint64_t x = 0; x < m; ++x) {
      BigInt c = count_congruent(xlo, xhi, BigInt(x), bm);
      if (c != 0) out[static_cast<std::size_t>((static_cast<unsigned __int128>(x) * x) % m)] += c;
    }
    return out;
  }

  void for_each_in(const BigInt& lo, const BigInt& hi, const std::function<bool(const BigInt&)>& fn) const override {
    for (BigInt x = ceil_sqrt(lo < 1 ? BigInt(1) : lo);; ++x) {
      BigInt sq = x * x;
      if (sq >= hi || !fn(sq)) return;
    }
  }
};

class SyntheticBlock final : public BaseSequence {
 public:
  SequenceKind kind() const override { return SequenceKind::SyntheticBlock; }
  std::string name() const override { return "synthetic-block"; }

  static BigInt start(unsigned long j) { return pow2(j * j); }
  static BigInt before(unsigned long j) { return BigInt(j) * (j - 1) / 2; }  // elements in blocks < j

  BigInt element(const BigInt& index) const override {
    if (index < 1) throw Error(ErrorKind::InvalidArgument, "sequence index starts at 1");
    BigInt j = (isqrt(8 * index + 1) - 1) / 2;
    while (j * (j + 1) / 2 < index) ++j;
    auto jj = j.convert_to<unsigned long>();
    return start(jj) + (index - before(jj) - 1);
  }

  // Smallest j whose block reaches past x.
  static unsigned long first_block_ending_after(const BigInt& x) {
    unsigned long j = 1;
    unsigned bits = bit_length(x);
    if (bits > 4) {
      unsigned long guess = isqrt(BigInt(bits)).convert_to<unsigned long>();
      j = guess > 2 ? guess - 2 : 1;
    }
    while (start(j) + j <= x) ++j;
    return j;
  }

  BigInt count(const BigInt& n) const override {
    if (n <= 2) return 0;
    unsigned long j = first_block_ending_after(n - 1);  // block holding or following n-1
    BigInt s = start(j);
    BigInt c = before(j);
    if (s < n) c += std::min(BigInt(j), BigInt(n - s));
    return c;
  }

  bool contains(const BigInt& x) const override {
    if (x < 2) return false;
    unsigned e = bit_length(x) - 1;
    unsigned long j = isqrt(BigInt(e)).convert_to<unsigned long>();
    if (static_cast<unsigned long>(e) != j * j) return false;
    return x - start(j) < j;
  }

  BigInt count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) const override {
    BigInt total = 0;
    if (hi <= lo) return total;
    for (unsigned long j = first_block_ending_after(lo);; ++j) {
      BigInt s = start(j);
      if (s >= hi) break;
      BigInt a = std::max(s, lo);
      BigInt b = std::min(BigInt(s + j), hi);
      total += count_congruent(a, b, r, m);
    }
    return total;
  }

  void for_each_in(const BigInt& lo, const BigInt& hi, const std::function<bool(const BigInt&)>& fn) const override {
    if (hi <= lo) return;
    for (unsigned long j = first_block_ending_after(lo);; ++j) {
      BigInt s = start(j);
      if (s >= hi) return;
      for (BigInt x = std::max(s, lo); x < s + j && x < hi; ++x)
        if (!fn(x)) return;
    }
  }

  BigInt next_record_candidate(const BigInt& i) const override {
    // Stretch ends inside a block are never records; only block starts can be.
    BigInt j = 2;
    while (j * (j - 1) / 2 <= i) ++j;
    return j * (j - 1) / 2;
  }
};

class Naturals final : public BaseSequence {
 public:
  SequenceKind kind() const override { return SequenceKind::Naturals; }
  std::string name() const override { return "naturals"; }
  BigInt element(const BigInt& index) const override { return index; }
  bool zero_density() const override { return false; }
  BigInt count(const BigInt& n) const override { return n <= 1 ? BigInt(0) : BigInt(n - 1); }
  bool contains(const BigInt& x) const override { return x >= 1; }
  BigInt count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) const override {
    return count_congruent(lo < 1 ? BigInt(1) : lo, hi, r, m);
  }
  void for_each_in(const BigInt& lo, const BigInt& hi, const std::function<bool(const BigInt&)>& fn) const override {
    for (BigInt x = lo < 1 ? BigInt(1) : lo; x < hi; ++x)
      if (!fn(x)) return;
  }
};

class FileSequence final : public BaseSequence {
 public:
  FileSequence(std::vector<BigInt> elements, std::string name) : elements_(std::move(elements)), name_(std::move(name)) {}

  SequenceKind kind() const override { return SequenceKind::File; }
  std::string name() const override { return name_; }
  std::optional<BigInt> length() const override { return BigInt(elements_.size()); }

  BigInt element(const BigInt& index) const override {
    if (index < 1 || index > elements_.size())
      throw Error(ErrorKind::SearchBudgetExhausted, "index " + to_string(index) + " beyond end of " + name_);
    return elements_[index.convert_to<std::size_t>() - 1];
  }

  BigInt count(const BigInt& n) const override {
    return BigInt(std::lower_bound(elements_.begin(), elements_.end(), n) - elements_.begin());
  }

  bool contains(const BigInt& x) const override { return std::binary_search(elements_.begin(), elements_.end(), x); }

  BigInt count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) const override {
    BigInt total = 0;
    BigInt rr = mod_floor(r, m);
    for (auto it = std::lower_bound(elements_.begin(), elements_.end(), lo); it != elements_.end() && *it < hi; ++it)
      if (mod_floor(*it, m) == rr) ++total;
    return total;
  }

  void for_each_in(const BigInt& lo, const BigInt& hi, const std::function<bool(const BigInt&)>& fn) const override {
    for (auto it = std::lower_bound(elements_.begin(), elements_.end(), lo); it != elements_.end() && *it < hi; ++it)
      if (!fn(*it)) return;
  }

 private:
  std::vector<BigInt> elements_;
  std::string name_;
};

}  // namespace

std::shared_ptr<const BaseSequence> make_squares() { return std::make_shared<Squares>(); }
std::shared_ptr<const BaseSequence> make_synthetic_block() { return std::make_shared<SyntheticBlock>(); }
std::shared_ptr<const BaseSequence> make_naturals() { return std::make_shared<Naturals>(); }

std::shared_ptr<const BaseSequence> make_file_sequence(std::vector<BigInt> elements, std::string name) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 1) throw Error(ErrorKind::InvalidArgument, "sequence elements must be positive");
    if (i > 0 && !(elements[i - 1] < elements[i]))
      throw Error(ErrorKind::InvalidArgument, "sequence must be strictly increasing at element " + std::to_string(i + 1));
  }
  return std::make_shared<FileSequence>(std::move(elements), std::move(name));
}

std::shared_ptr<const BaseSequence> load_sequence_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open sequence file " + path.string());
  return make_file_sequence(read_sequence(in), path.filename().string());
}

std::vector<BigInt> read_sequence(std::istream& in) {
  std::vector<BigInt> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    if (tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(lineno) + ": not a decimal integer");
    BigInt v = parse_bigint(tok);
    if (v < 1) throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(lineno) + ": element must be positive");
    if (!out.empty() && !(out.back() < v))
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(lineno) + ": sequence not strictly increasing");
    out.push_back(std::move(v));
  }
  return out;
}

void write_sequence(std::ostream& out, const std::vector<BigInt>& elements) {
  for (const auto& x : elements) out << x.str() << '\n';
}

DensityRecordPoint stretch_end(const BaseSequence& seq, const BigInt& i) {
  return {seq.element(i + 1), i, i};
}

DensityRecordPoint find_density_record(const BaseSequence& seq, const Real& threshold, const SearchBudget& budget) {
  if (!(threshold > 0)) throw Error(ErrorKind::InvalidArgument, "density threshold must be positive");
  if (!seq.zero_density()) throw Error(ErrorKind::PreconditionViolation, seq.name() + " is not declared zero-density");

  std::uint64_t evaluated = 0;
  auto next_end = [&](const BigInt& i) {
    if (++evaluated > budget.max_candidates)
      throw Error(ErrorKind::SearchBudgetExhausted, "density record search exceeded candidate budget");
    BigInt a = seq.element(i + 1);
    if (bit_length(a) > budget.max_bits)
      throw Error(ErrorKind::SearchBudgetExhausted, "density record search exceeded the size ceiling");
    return a;
  };
  // i / a <= threshold
  auto within = [&](const BigInt& i, const BigInt& a) {
    PrecisionScope scope(bit_length(a) + 128);
    return to_real(i) <= threshold * to_real(a);
  };

  BigInt stretch;
  std::optional<std::pair<BigInt, BigInt>> prefix_min;  // (count, m) of the smallest earlier ratio
  if (seq.record_ratios_monotone()) {
    BigInt lo = 0, hi = 1;
    while (!within(hi, next_end(hi))) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      BigInt mid = (lo + hi) / 2;
      if (within(mid, next_end(mid))) hi = mid; else lo = mid;
    }
    stretch = hi;
    if (stretch > 1) prefix_min = std::make_pair(BigInt(stretch - 1), seq.element(stretch));
  } else {
    BigInt i = seq.next_record_candidate(0);
    for (;;) {
      BigInt a = next_end(i);
      bool is_min = !prefix_min || i * prefix_min->second <= prefix_min->first * a;
      if (is_min && within(i, a)) break;
      if (is_min) prefix_min = std::make_pair(i, a);
      i = seq.next_record_candidate(i);
    }
    stretch = i;
  }

  // Earliest m in the stretch (a_i, a_{i+1}] that is both a record and under the threshold.
  BigInt lower = seq.element(stretch) + 1;
  if (prefix_min) {
    // stretch / m <= c / m'  <=>  m >= stretch * m' / c
    BigInt need = stretch * prefix_min->second;
    BigInt q = floor_div(need + prefix_min->first - 1, prefix_min->first);
    lower = std::max(lower, q);
  }
  {
    BigInt end = seq.element(stretch + 1);
    PrecisionScope scope(bit_length(end) + 128);
    BigInt q = ceil_of(to_real(stretch) / threshold);
    lower = std::max(lower, q);
    if (lower > end) lower = end;  // rounding guard; the stretch end always qualifies
  }
  return {lower, stretch, stretch};
}

}  // namespace pseq
