#include "shiftlab/report.hpp"

namespace shiftlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds-on-window";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict combine(const std::vector<ConditionReport>& reports) {
  bool all_hold = true;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::violated) return Verdict::violated;
    all_hold = all_hold && r.verdict == Verdict::holds;
  }
  return all_hold ? Verdict::holds : Verdict::inconclusive;
}

ConditionReport merge(std::string id, const std::vector<ConditionReport>& parts) {
  ConditionReport out = ConditionReport::make(std::move(id), combine(parts));
  out.quantities["parts"] = to_json(parts);
  for (const auto& p : parts) {
    if (p.verdict == Verdict::violated) {
      out.witness = p.witness;
      out.note = p.id + ": " + p.note;
      break;
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const ConditionReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["verdict"] = to_string(r.verdict);
  j["quantities"] = r.quantities;
  j["witness"] = r.witness;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::ordered_json to_json(const std::vector<ConditionReport>& rs) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& r : rs) j.push_back(to_json(r));
  return j;
}

}  // namespace shiftlab
