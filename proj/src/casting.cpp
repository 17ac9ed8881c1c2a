#include "iching/casting.hpp"

#include "iching/error.hpp"

namespace iching {

void CastingRecord::append(const CoinToss& toss) {
  if (complete()) throw Error(ErrorCode::InvalidState, "casting already has six lines");
  tosses_.push_back(toss);
  lines_.push_back(line_from_toss(toss));
}

std::vector<int> CastingRecord::dong_yao() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    if (lines_[i].changing) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::optional<Hexagram> CastingRecord::ben_gua() const {
  if (!complete()) return std::nullopt;
  return build_hexagram(lines_);
}

std::optional<Hexagram> CastingRecord::zhi_gua() const {
  auto ben = ben_gua();
  if (!ben) return std::nullopt;
  return derive_zhi_gua(*ben, dong_yao());
}

CoinToss toss_for(std::uint64_t seed, std::uint64_t epoch, int toss_index) {
  Rng rng = Rng::for_stream(seed, stream_id(epoch, StreamPurpose::Toss,
                                            static_cast<std::uint64_t>(toss_index)));
  return toss_coins(rng);
}

CastingRecord cast_hexagram(std::uint64_t seed, std::uint64_t epoch) {
  CastingRecord record(seed);
  for (int k = 0; k < 6; ++k) record.append(toss_for(seed, epoch, k));
  return record;
}

nlohmann::json to_json(const Hexagram& hexagram) {
  nlohmann::json lines = nlohmann::json::array();
  for (Polarity p : hexagram.lines()) lines.push_back(p == Polarity::Yang ? "yang" : "yin");
  return {{"king_wen", hexagram.king_wen()},
          {"lines", std::move(lines)},
          {"lower", static_cast<int>(hexagram.lower())},
          {"upper", static_cast<int>(hexagram.upper())}};
}

nlohmann::json to_json(const CoinToss& toss) {
  std::string faces;
  for (Face f : toss.coins) faces.push_back(f == Face::Heads ? 'H' : 'T');
  return {{"coins", faces}, {"sum", toss.sum()}};
}

nlohmann::json to_json(const Line& line) {
  return {{"changing", line.changing},
          {"polarity", line.polarity == Polarity::Yang ? "yang" : "yin"},
          {"sum", line.source_sum}};
}

nlohmann::json to_json(const CastingRecord& record) {
  nlohmann::json tosses = nlohmann::json::array();
  for (const auto& t : record.tosses()) tosses.push_back(to_json(t));
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& l : record.lines()) lines.push_back(to_json(l));
  auto ben = record.ben_gua();
  auto zhi = record.zhi_gua();
  return {{"ben_gua", ben ? to_json(*ben) : nlohmann::json(nullptr)},
          {"dong_yao", record.dong_yao()},
          {"lines", std::move(lines)},
          {"seed", std::to_string(record.seed())},
          {"tosses", std::move(tosses)},
          {"zhi_gua", zhi ? to_json(*zhi) : nlohmann::json(nullptr)}};
}

CastingRecord casting_record_from_json(const nlohmann::json& j) {
  try {
    CastingRecord record(std::stoull(j.at("seed").get<std::string>()));
    for (const auto& t : j.at("tosses")) {
      const auto faces = t.at("coins").get<std::string>();
      if (faces.size() != 3) throw Error(ErrorCode::SchemaError, "toss needs three coins");
      CoinToss toss;
      for (std::size_t i = 0; i < 3; ++i) {
        if (faces[i] != 'H' && faces[i] != 'T') {
          throw Error(ErrorCode::SchemaError, "coin face must be H or T");
        }
        toss.coins[i] = faces[i] == 'H' ? Face::Heads : Face::Tails;
      }
      record.append(toss);
    }
    if (to_json(record) != j) {
      throw Error(ErrorCode::SchemaError, "casting record fields are inconsistent with its tosses");
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed casting record: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed casting record: ") + e.what());
  }
}

std::string canonical_json(const CastingRecord& record) { return to_json(record).dump(); }

}  // namespace iching
