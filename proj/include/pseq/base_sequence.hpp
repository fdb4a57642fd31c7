#pragma once

#include "pseq/numeric.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pseq {

inline constexpr std::size_t kDefaultEnumerationLimit = 10'000'000;

/// A set of positive integers with exact counting. Counting follows
/// A(N) = A ∩ [1, N).
class IntegerSet {
 public:
  virtual ~IntegerSet() = default;

  virtual BigInt count(const BigInt& n) const = 0;
  /// |X ∩ [lo, hi) ∩ {x = r mod m}|.
  virtual BigInt count_in_residue(const BigInt& lo, const BigInt& hi, const BigInt& r, const BigInt& m) const = 0;
  virtual bool contains(const BigInt& x) const = 0;
  /// Ascending visit of X ∩ [lo, hi); stops early when fn returns false.
  virtual void for_each_in(const BigInt& lo, const BigInt& hi, const std::function<bool(const BigInt&)>& fn) const = 0;

  /// Counts of X ∩ [lo, hi) in each residue class mod m.
  virtual std::vector<BigInt> residue_profile(const BigInt& lo, const BigInt& hi, std::uint64_t m) const;

  /// All elements of [lo, hi); throws resource-limit past `limit`.
  std::vector<BigInt> elements_in(const BigInt& lo, const BigInt& hi,
                                  std::size_t limit = kDefaultEnumerationLimit) const;
  /// At most `limit` smallest elements of [lo, hi).
  std::vector<BigInt> first_elements(const BigInt& lo, const BigInt& hi, std::size_t limit) const;
};

enum class SequenceKind { Squares, SyntheticBlock, File, Naturals };

/// Strictly increasing sequence a_1 < a_2 < ... of positive integers.
class BaseSequence : public IntegerSet {
 public:
  virtual SequenceKind kind() const = 0;
  virtual std::string name() const = 0;
  /// a_index for index >= 1.
  virtual BigInt element(const BigInt& index) const = 0;
  virtual bool zero_density() const { return true; }
  /// Finite sequences report their length.
  virtual std::optional<BigInt> length() const { return std::nullopt; }

  /// The stretch ratios i / a_{i+1} are nonincreasing in i, so every stretch
  /// end is a density record and searches may bisect on i.
  virtual bool record_ratios_monotone() const { return false; }
  /// Next stretch index after i whose end a_{i+1} can be a density record.
  virtual BigInt next_record_candidate(const BigInt& i) const { return i + 1; }
};

std::shared_ptr<const BaseSequence> make_squares();
/// Blocks [2^{j^2}, 2^{j^2} + j), j = 1, 2, ...
std::shared_ptr<const BaseSequence> make_synthetic_block();
std::shared_ptr<const BaseSequence> make_naturals();
std::shared_ptr<const BaseSequence> make_file_sequence(std::vector<BigInt> elements, std::string name = "file");
std::shared_ptr<const BaseSequence> load_sequence_file(const std::filesystem::path& path);

/// One decimal integer per line, strictly increasing, positive.
std::vector<BigInt> read_sequence(std::istream& in);
void write_sequence(std::ostream& out, const std::vector<BigInt>& elements);

/// m with |S(m)|/m <= |S(m')|/m' for every m' <= m having |S(m')| > 0.
struct DensityRecordPoint {
  BigInt m;
  BigInt count;        // |S(m)|
  BigInt stretch;      // i with a_i < m <= a_{i+1}; equals count
  double ratio() const { return to_double(count) / to_double(m); }
};

struct SearchBudget {
  std::uint64_t max_candidates = 1'000'000;
  unsigned max_bits = 1u << 20;
};

/// Smallest density record with |S(m)|/m <= threshold.
DensityRecordPoint find_density_record(const BaseSequence& seq, const Real& threshold,
                                       const SearchBudget& budget = {});

/// The record at the end of stretch i (m = a_{i+1}, |S(m)| = i).
DensityRecordPoint stretch_end(const BaseSequence& seq, const BigInt& i);

}  // namespace pseq
