#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace shiftlab {

enum class Verdict { holds, violated, inconclusive };

std::string to_string(Verdict v);

/// Outcome of one checked condition. A violated verdict carries a witness
/// that re-evaluates to a violation on its own.
struct ConditionReport {
  std::string id;
  Verdict verdict = Verdict::inconclusive;
  nlohmann::ordered_json quantities = nlohmann::ordered_json::object();
  nlohmann::ordered_json witness = nullptr;
  std::string note;

  static ConditionReport make(std::string id, Verdict v) {
    ConditionReport r;
    r.id = std::move(id);
    r.verdict = v;
    return r;
  }
  static ConditionReport holds(std::string id) { return make(std::move(id), Verdict::holds); }
  static ConditionReport inconclusive(std::string id, std::string note) {
    ConditionReport r = make(std::move(id), Verdict::inconclusive);
    r.note = std::move(note);
    return r;
  }
  static ConditionReport violated(std::string id, nlohmann::ordered_json witness, std::string note = {}) {
    ConditionReport r = make(std::move(id), Verdict::violated);
    r.witness = std::move(witness);
    r.note = std::move(note);
    return r;
  }
};

/// Holds if every entry holds; violated if any is violated; else inconclusive.
Verdict combine(const std::vector<ConditionReport>& reports);

/// Combine under a single id, keeping the first violation's witness.
ConditionReport merge(std::string id, const std::vector<ConditionReport>& parts);

nlohmann::ordered_json to_json(const ConditionReport& r);
nlohmann::ordered_json to_json(const std::vector<ConditionReport>& rs);

}  // namespace shiftlab
