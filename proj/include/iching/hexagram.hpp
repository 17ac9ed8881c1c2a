#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "iching/rng.hpp"

namespace iching {

enum class Face { Heads, Tails };

// Wen Wang Fa coin values: heads count 3, tails count 2.
constexpr int coin_value(Face face) { return face == Face::Heads ? 3 : 2; }

struct CoinToss {
  std::array<Face, 3> coins{};

  int sum() const { return coin_value(coins[0]) + coin_value(coins[1]) + coin_value(coins[2]); }
  friend bool operator==(const CoinToss&, const CoinToss&) = default;
};

CoinToss toss_coins(Rng& rng);

enum class Polarity { Yin, Yang };

constexpr Polarity flip(Polarity p) { return p == Polarity::Yin ? Polarity::Yang : Polarity::Yin; }

// The four line types, ordered by their coin sum 6..9.
enum class LineType { OldYin, YoungYang, YoungYin, OldYang };

struct Line {
  Polarity polarity = Polarity::Yin;
  bool changing = false;
  int source_sum = 8;

  LineType type() const { return static_cast<LineType>(source_sum - 6); }
  friend bool operator==(const Line&, const Line&) = default;
};

Line line_from_sum(int sum);
inline Line line_from_toss(const CoinToss& toss) { return line_from_sum(toss.sum()); }

std::string_view to_string(LineType type);

// Trigrams in the Fu Xi ("earlier heaven") order, numbered 1..8.
enum class Trigram { Qian = 1, Dui, Li, Zhen, Xun, Kan, Gen, Kun };

std::string_view to_string(Trigram t);

// Six-bit line pattern: bit (i - 1) is set when line i (1 = bottom) is yang.
using LinePattern = std::uint8_t;

int king_wen_number(LinePattern pattern);
LinePattern pattern_for_king_wen(int king_wen);

class Hexagram {
 public:
  static Hexagram from_pattern(LinePattern pattern);
  static Hexagram from_king_wen(int king_wen);

  LinePattern pattern() const { return pattern_; }
  int king_wen() const { return king_wen_; }
  // 1-based, 1 = bottom line.
  Polarity line(int index) const;
  std::array<Polarity, 6> lines() const;
  Trigram lower() const;
  Trigram upper() const;

  friend bool operator==(const Hexagram&, const Hexagram&) = default;

 private:
  Hexagram(LinePattern pattern, int king_wen) : pattern_(pattern), king_wen_(king_wen) {}

  LinePattern pattern_;
  int king_wen_;
};

Hexagram build_hexagram(std::span<const Line> lines);

// Flips the lines at `dong_yao` (1-based indices). Duplicates are ignored.
Hexagram derive_zhi_gua(const Hexagram& ben, std::span<const int> dong_yao);

}  // namespace iching
