#include "doctest.h"

#include <array>
#include <set>

#include "iching/error.hpp"
#include "iching/hexagram.hpp"
#include "iching/rng.hpp"

using namespace iching;

namespace {

// Lines of each trigram, bottom line in bit 0.
constexpr int kQian = 0b111, kZhen = 0b001, kKan = 0b010, kGen = 0b100, kKun = 0b000,
              kXun = 0b110, kLi = 0b101, kDui = 0b011;

// The customary lookup chart: rows are upper trigrams, columns lower
// trigrams, both in the order Qian Zhen Kan Gen Kun Xun Li Dui.
constexpr std::array<int, 8> kChartOrder = {kQian, kZhen, kKan, kGen, kKun, kXun, kLi, kDui};
constexpr int kChart[8][8] = {
    {1, 25, 6, 33, 12, 44, 13, 10},  {34, 51, 40, 62, 16, 32, 55, 54},
    {5, 3, 29, 39, 8, 48, 63, 60},   {26, 27, 4, 52, 23, 18, 22, 41},
    {11, 24, 7, 15, 2, 46, 36, 19},  {9, 42, 59, 53, 20, 57, 37, 61},
    {14, 21, 64, 56, 35, 50, 30, 38}, {43, 17, 47, 31, 45, 28, 49, 58},
};

int reverse6(int p) {
  int r = 0;
  for (int i = 0; i < 6; ++i)
    if (p & (1 << i)) r |= 1 << (5 - i);
  return r;
}

}  // namespace

TEST_CASE("coin sums map to the four line types") {
  CHECK(coin_value(Face::Heads) == 3);
  CHECK(coin_value(Face::Tails) == 2);
  const Line l6 = line_from_sum(6), l7 = line_from_sum(7), l8 = line_from_sum(8), l9 = line_from_sum(9);
  CHECK((l6.polarity == Polarity::Yin && l6.changing && l6.type() == LineType::OldYin));
  CHECK((l7.polarity == Polarity::Yang && !l7.changing && l7.type() == LineType::YoungYang));
  CHECK((l8.polarity == Polarity::Yin && !l8.changing && l8.type() == LineType::YoungYin));
  CHECK((l9.polarity == Polarity::Yang && l9.changing && l9.type() == LineType::OldYang));
  CHECK_THROWS_AS(line_from_sum(5), Error);
  CHECK_THROWS_AS(line_from_sum(10), Error);
}

TEST_CASE("king wen numbering matches the lookup chart") {
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      const auto pattern = static_cast<LinePattern>(kChartOrder[col] | (kChartOrder[row] << 3));
      CHECK(king_wen_number(pattern) == kChart[row][col]);
      CHECK(pattern_for_king_wen(kChart[row][col]) == pattern);
    }
  }
}

TEST_CASE("king wen pairs are inversions or complements") {
  for (int k = 1; k <= 63; k += 2) {
    const int a = pattern_for_king_wen(k), b = pattern_for_king_wen(k + 1);
    if (reverse6(a) == a) {
      CHECK(b == (a ^ 0x3F));
    } else {
      CHECK(b == reverse6(a));
    }
  }
}

TEST_CASE("king wen numbering is a bijection") {
  std::set<int> seen;
  for (int p = 0; p < 64; ++p) {
    const int k = king_wen_number(static_cast<LinePattern>(p));
    CHECK(k >= 1);
    CHECK(k <= 64);
    seen.insert(k);
  }
  CHECK(seen.size() == 64);
  CHECK_THROWS_AS(pattern_for_king_wen(0), Error);
  CHECK_THROWS_AS(pattern_for_king_wen(65), Error);
}

TEST_CASE("hexagram exposes lines and trigrams") {
  const Hexagram h = Hexagram::from_king_wen(63);
  CHECK(h.pattern() == 0b010101);
  CHECK(h.lower() == Trigram::Li);
  CHECK(h.upper() == Trigram::Kan);
  CHECK(h.line(1) == Polarity::Yang);
  CHECK(h.line(2) == Polarity::Yin);
}

TEST_CASE("build_hexagram needs six lines") {
  std::vector<Line> lines(5, line_from_sum(7));
  CHECK_THROWS_AS(build_hexagram(lines), Error);
  lines.push_back(line_from_sum(7));
  CHECK(build_hexagram(lines).king_wen() == 1);
}

TEST_CASE("zhi gua flips exactly the changing lines") {
  const Hexagram qian = Hexagram::from_king_wen(1);
  const std::vector<int> none;
  CHECK(derive_zhi_gua(qian, none) == qian);
  const std::vector<int> all = {1, 2, 3, 4, 5, 6};
  CHECK(derive_zhi_gua(qian, all).king_wen() == 2);
  const std::vector<int> first = {1};
  CHECK(derive_zhi_gua(qian, first).king_wen() == 44);
  const std::vector<int> bad = {7};
  CHECK_THROWS_AS(derive_zhi_gua(qian, bad), Error);

  Rng r(5);
  for (int i = 0; i < 1000; ++i) {
    const auto h = Hexagram::from_pattern(static_cast<LinePattern>(r.below(64)));
    std::vector<int> idx;
    for (int j = 1; j <= 6; ++j)
      if (r.coin()) idx.push_back(j);
    CHECK(derive_zhi_gua(derive_zhi_gua(h, idx), idx) == h);
  }
}
