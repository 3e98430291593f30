#include "rewardlab/jsonio.hpp"

#include <stdexcept>

namespace rewardlab {

using ordered_json = nlohmann::ordered_json;

ordered_json breakdown_to_json(const RewardBreakdown& bd) {
  ordered_json j;
  j["kind"] = to_string(bd.kind);
  j["total"] = bd.total;
  j["components"] = bd.components;
  j["weights"] = bd.weights;
  if (bd.missing_losses) j["missing_losses"] = true;
  if (!bd.parts.empty()) {
    ordered_json parts = ordered_json::array();
    for (const auto& part : bd.parts) parts.push_back(breakdown_to_json(part));
    j["parts"] = std::move(parts);
  }
  return j;
}

BatchRecord batch_record_from_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
  BatchRecord rec;
  rec.id = j.at("id").get<std::string>();
  rec.completion = j.at("completion").get<std::string>();
  rec.truth = j.at("truth").get<std::string>();
  if (j.contains("losses") && !j.at("losses").is_null()) {
    const auto& l = j.at("losses");
    if (!l.is_array() || l.size() != 3) {
      throw std::invalid_argument("losses must be an array of three numbers");
    }
    SegmentLosses losses{l[0].get<double>(), l[1].get<double>(), l[2].get<double>()};
    losses.validate();
    rec.losses = losses;
  }
  return rec;
}

}  // namespace rewardlab
