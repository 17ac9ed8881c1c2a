#include "iching/hexagram.hpp"

#include <string>

#include "iching/error.hpp"

namespace iching {

namespace {

// Line bits of each trigram, bottom line in bit 0. Indexed by Trigram - 1.
constexpr std::array<std::uint8_t, 8> kTrigramBits = {
    0b111,  // Qian
    0b011,  // Dui
    0b101,  // Li
    0b001,  // Zhen
    0b110,  // Xun
    0b010,  // Kan
    0b100,  // Gen
    0b000,  // Kun
};

constexpr LinePattern stack(Trigram upper, Trigram lower) {
  return static_cast<LinePattern>((kTrigramBits[static_cast<int>(upper) - 1] << 3) |
                                  kTrigramBits[static_cast<int>(lower) - 1]);
}

using T = Trigram;

// King Wen sequence as (upper, lower) trigram pairs; entry k - 1 is hexagram k.
constexpr std::array<LinePattern, 64> kKingWen = {
    stack(T::Qian, T::Qian), stack(T::Kun, T::Kun),   stack(T::Kan, T::Zhen),
    stack(T::Gen, T::Kan),   stack(T::Kan, T::Qian),  stack(T::Qian, T::Kan),
    stack(T::Kun, T::Kan),   stack(T::Kan, T::Kun),   stack(T::Xun, T::Qian),
    stack(T::Qian, T::Dui),  stack(T::Kun, T::Qian),  stack(T::Qian, T::Kun),
    stack(T::Qian, T::Li),   stack(T::Li, T::Qian),   stack(T::Kun, T::Gen),
    stack(T::Zhen, T::Kun),  stack(T::Dui, T::Zhen),  stack(T::Gen, T::Xun),
    stack(T::Kun, T::Dui),   stack(T::Xun, T::Kun),   stack(T::Li, T::Zhen),
    stack(T::Gen, T::Li),    stack(T::Gen, T::Kun),   stack(T::Kun, T::Zhen),
    stack(T::Qian, T::Zhen), stack(T::Gen, T::Qian),  stack(T::Gen, T::Zhen),
    stack(T::Dui, T::Xun),   stack(T::Kan, T::Kan),   stack(T::Li, T::Li),
    stack(T::Dui, T::Gen),   stack(T::Zhen, T::Xun),  stack(T::Qian, T::Gen),
    stack(T::Zhen, T::Qian), stack(T::Li, T::Kun),    stack(T::Kun, T::Li),
    stack(T::Xun, T::Li),    stack(T::Li, T::Dui),    stack(T::Kan, T::Gen),
    stack(T::Zhen, T::Kan),  stack(T::Gen, T::Dui),   stack(T::Xun, T::Zhen),
    stack(T::Dui, T::Qian),  stack(T::Qian, T::Xun),  stack(T::Dui, T::Kun),
    stack(T::Kun, T::Xun),   stack(T::Dui, T::Kan),   stack(T::Kan, T::Xun),
    stack(T::Dui, T::Li),    stack(T::Li, T::Xun),    stack(T::Zhen, T::Zhen),
    stack(T::Gen, T::Gen),   stack(T::Xun, T::Gen),   stack(T::Zhen, T::Dui),
    stack(T::Zhen, T::Li),   stack(T::Li, T::Gen),    stack(T::Xun, T::Xun),
    stack(T::Dui, T::Dui),   stack(T::Xun, T::Kan),   stack(T::Kan, T::Dui),
    stack(T::Xun, T::Dui),   stack(T::Zhen, T::Gen),  stack(T::Kan, T::Li),
    stack(T::Li, T::Kan),
};

constexpr std::array<std::uint8_t, 64> invert_king_wen() {
  std::array<std::uint8_t, 64> inverse{};
  for (int k = 0; k < 64; ++k) inverse[kKingWen[k]] = static_cast<std::uint8_t>(k + 1);
  return inverse;
}

constexpr std::array<std::uint8_t, 64> kPatternToKingWen = invert_king_wen();

Trigram trigram_from_bits(unsigned bits) {
  for (int i = 0; i < 8; ++i) {
    if (kTrigramBits[i] == bits) return static_cast<Trigram>(i + 1);
  }
  return Trigram::Kun;
}

}  // namespace

CoinToss toss_coins(Rng& rng) {
  CoinToss toss;
  for (auto& face : toss.coins) face = rng.coin() ? Face::Heads : Face::Tails;
  return toss;
}

Line line_from_sum(int sum) {
  switch (sum) {
    case 6: return {Polarity::Yin, true, 6};
    case 7: return {Polarity::Yang, false, 7};
    case 8: return {Polarity::Yin, false, 8};
    case 9: return {Polarity::Yang, true, 9};
    default:
      throw Error(ErrorCode::InvalidArgument, "coin sum must be 6..9, got " + std::to_string(sum));
  }
}

std::string_view to_string(LineType type) {
  switch (type) {
    case LineType::OldYin: return "old_yin";
    case LineType::YoungYang: return "young_yang";
    case LineType::YoungYin: return "young_yin";
    case LineType::OldYang: return "old_yang";
  }
  return "?";
}

std::string_view to_string(Trigram t) {
  static constexpr std::array<std::string_view, 8> names = {"Qian", "Dui", "Li",  "Zhen",
                                                            "Xun",  "Kan", "Gen", "Kun"};
  return names[static_cast<int>(t) - 1];
}

int king_wen_number(LinePattern pattern) {
  if (pattern > 63) throw Error(ErrorCode::InvalidArgument, "line pattern must be 6 bits");
  return kPatternToKingWen[pattern];
}

LinePattern pattern_for_king_wen(int king_wen) {
  if (king_wen < 1 || king_wen > 64) {
    throw Error(ErrorCode::IndexOutOfRange,
                "King Wen number must be 1..64, got " + std::to_string(king_wen));
  }
  return kKingWen[king_wen - 1];
}

Hexagram Hexagram::from_pattern(LinePattern pattern) {
  return Hexagram(pattern, king_wen_number(pattern));
}

Hexagram Hexagram::from_king_wen(int king_wen) {
  return Hexagram(pattern_for_king_wen(king_wen), king_wen);
}

Polarity Hexagram::line(int index) const {
  if (index < 1 || index > 6) {
    throw Error(ErrorCode::IndexOutOfRange, "line index must be 1..6, got " + std::to_string(index));
  }
  return (pattern_ >> (index - 1)) & 1u ? Polarity::Yang : Polarity::Yin;
}

std::array<Polarity, 6> Hexagram::lines() const {
  std::array<Polarity, 6> out{};
  for (int i = 1; i <= 6; ++i) out[i - 1] = line(i);
  return out;
}

Trigram Hexagram::lower() const { return trigram_from_bits(pattern_ & 0b111u); }
Trigram Hexagram::upper() const { return trigram_from_bits(pattern_ >> 3); }

Hexagram build_hexagram(std::span<const Line> lines) {
  if (lines.size() != 6) {
    throw Error(ErrorCode::WrongLineCount,
                "a hexagram needs exactly 6 lines, got " + std::to_string(lines.size()));
  }
  LinePattern pattern = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (lines[i].polarity == Polarity::Yang) pattern |= static_cast<LinePattern>(1u << i);
  }
  return Hexagram::from_pattern(pattern);
}

Hexagram derive_zhi_gua(const Hexagram& ben, std::span<const int> dong_yao) {
  LinePattern mask = 0;
  for (int index : dong_yao) {
    if (index < 1 || index > 6) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "changing line index must be 1..6, got " + std::to_string(index));
    }
    mask |= static_cast<LinePattern>(1u << (index - 1));
  }
  return Hexagram::from_pattern(ben.pattern() ^ mask);
}

}  // namespace iching
