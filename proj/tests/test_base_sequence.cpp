#include "pseq/base_sequence.hpp"
#include "pseq/errors.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace pseq;

namespace {

// Smallest m whose ratio |S(m)|/m is at most num/den and at most every
// earlier ratio with a nonempty prefix. Plain scan over m.
std::optional<std::int64_t> brute_record(const std::vector<std::int64_t>& elems, std::int64_t num, std::int64_t den) {
  std::int64_t count = 0;
  std::size_t next = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> best;  // (count, m)
  std::int64_t last = elems.back();
  for (std::int64_t m = 1; m <= last; ++m) {
    while (next < elems.size() && elems[next] < m) {
      ++count;
      ++next;
    }
    if (count == 0) continue;
    bool record = !best || count * best->second <= best->first * m;
    if (record) {
      if (count * den <= num * m) return m;
      best = std::make_pair(count, m);
    }
  }
  return std::nullopt;
}

std::vector<std::int64_t> prefix(const BaseSequence& seq, std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 1; i <= n; ++i) out.push_back(seq.element(i).convert_to<std::int64_t>());
  return out;
}

void check_structure(const BaseSequence& seq, std::int64_t hi) {
  std::int64_t count = 0;
  for (std::int64_t x = 1; x < hi; ++x) {
    CHECK(seq.count(BigInt(x)) == count);
    if (seq.contains(BigInt(x))) ++count;
  }
  auto elems = seq.elements_in(BigInt(1), BigInt(hi));
  CHECK(static_cast<std::int64_t>(elems.size()) == count);
  for (std::size_t i = 0; i < elems.size(); ++i) CHECK(seq.element(BigInt(i + 1)) == elems[i]);
  for (std::uint64_t m : {1u, 2u, 3u, 7u, 16u}) {
    auto prof = seq.residue_profile(BigInt(5), BigInt(hi), m);
    for (std::uint64_t r = 0; r < m; ++r) {
      std::int64_t brute = 0;
      for (const auto& x : elems)
        if (x >= 5 && x % m == r) ++brute;
      CHECK(prof[r] == brute);
      CHECK(seq.count_in_residue(BigInt(5), BigInt(hi), BigInt(r), BigInt(m)) == brute);
    }
  }
}

}  // namespace

TEST_CASE("squares") {
  auto sq = make_squares();
  CHECK(sq->count(BigInt(1)) == 0);
  CHECK(sq->count(BigInt(2)) == 1);
  CHECK(sq->count(BigInt(100)) == 9);
  CHECK(sq->count(BigInt(101)) == 10);
  CHECK(sq->contains(BigInt(144)));
  CHECK_FALSE(sq->contains(BigInt(145)));
  check_structure(*sq, 3000);
}

TEST_CASE("synthetic blocks") {
  auto sb = make_synthetic_block();
  auto first = sb->elements_in(BigInt(1), BigInt(1000));
  std::vector<BigInt> expect{2, 16, 17, 512, 513, 514};
  CHECK(first == expect);
  CHECK(sb->count(pow2(16) + 4) == 10);
  CHECK(sb->count(pow2(16) + 3) == 9);
  check_structure(*sb, 5000);
}

TEST_CASE("naturals have positive density") {
  auto nat = make_naturals();
  CHECK(nat->count(BigInt(10)) == 9);
  CHECK_FALSE(nat->zero_density());
  CHECK_THROWS_AS(find_density_record(*nat, Real(0.5)), Error);
  check_structure(*nat, 200);
}

TEST_CASE("file sequences round trip") {
  std::vector<BigInt> elems{3, 5, 40, 41, 1000};
  std::stringstream ss;
  write_sequence(ss, elems);
  CHECK(read_sequence(ss) == elems);
  auto f = make_file_sequence(elems);
  CHECK(f->length() == BigInt(5));
  CHECK(f->count(BigInt(41)) == 3);
  check_structure(*f, 1100);
  CHECK_THROWS_AS(f->element(BigInt(6)), Error);

  std::stringstream bad1("3\n3\n");
  CHECK_THROWS_AS(read_sequence(bad1), Error);
  std::stringstream bad2("3\nx\n");
  CHECK_THROWS_AS(read_sequence(bad2), Error);
  std::stringstream bad3("0\n");
  CHECK_THROWS_AS(read_sequence(bad3), Error);
  CHECK_THROWS_AS(make_file_sequence({5, 4}), Error);
}

TEST_CASE("density records match a plain scan on squares") {
  auto sq = make_squares();
  auto elems = prefix(*sq, 400);
  for (std::int64_t den : {2, 3, 5, 10, 17, 40, 100}) {
    for (std::int64_t num : {1, 2, 3}) {
      if (num >= den) continue;
      auto brute = brute_record(elems, num, den);
      REQUIRE(brute.has_value());
      PrecisionScope scope(kBaseBits);
      auto rec = find_density_record(*sq, Real(num) / den);
      CHECK(rec.m == *brute);
      CHECK(rec.count == sq->count(rec.m));
    }
  }
  PrecisionScope scope(kBaseBits);
  CHECK(find_density_record(*sq, Real(1) / 10).m == 80);
  CHECK(find_density_record(*sq, Real(1)).m == 2);
}

TEST_CASE("density records match a plain scan on random sparse sequences") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    std::vector<std::int64_t> elems;
    std::int64_t x = 1 + static_cast<std::int64_t>(rng() % 5);
    for (int i = 0; i < 300; ++i) {
      elems.push_back(x);
      x += 1 + static_cast<std::int64_t>(rng() % (2 + i / 4));
    }
    std::vector<BigInt> big(elems.begin(), elems.end());
    auto seq = make_file_sequence(big);
    std::int64_t den = 2 + static_cast<std::int64_t>(rng() % 30);
    auto brute = brute_record(elems, 1, den);
    PrecisionScope scope(kBaseBits);
    if (brute) {
      CHECK(find_density_record(*seq, Real(1) / den).m == *brute);
    } else {
      CHECK_THROWS_AS(find_density_record(*seq, Real(1) / den), Error);
    }
  }
}

TEST_CASE("density record on synthetic blocks") {
  auto sb = make_synthetic_block();
  auto elems = prefix(*sb, 6);
  PrecisionScope scope(kBaseBits);
  for (std::int64_t den : {2, 4, 8, 16, 100}) {
    auto brute = brute_record(elems, 1, den);
    if (brute) CHECK(find_density_record(*sb, Real(1) / den).m == *brute);
  }
}

TEST_CASE("search budgets are enforced") {
  auto sq = make_squares();
  PrecisionScope scope(kBaseBits);
  SearchBudget tiny{3, 1u << 20};
  CHECK_THROWS_AS(find_density_record(*sq, Real(1) / 1000, tiny), Error);
  SearchBudget narrow{1000000, 8};
  CHECK_THROWS_AS(find_density_record(*sq, Real(1) / 1000, narrow), Error);
  CHECK_THROWS_AS(find_density_record(*sq, Real(0)), Error);
}

TEST_CASE("stretch end") {
  auto sq = make_squares();
  auto p = stretch_end(*sq, BigInt(3));
  CHECK(p.m == 16);
  CHECK(p.count == 3);
  CHECK(p.ratio() == doctest::Approx(3.0 / 16.0));
}
