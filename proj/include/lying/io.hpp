#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lying/action_model.hpp"
#include "lying/kripke.hpp"
#include "lying/plausibility.hpp"
#include "lying/scenarios.hpp"

namespace lying {

using json = nlohmann::ordered_json;

/// A model file: the point is optional.
struct ModelFile {
  KripkeModel model;
  std::optional<std::size_t> point;

  /// Throws InputError when the file has no point.
  PointedModel pointed() const;
};

struct PlausibilityFile {
  PlausibilityModel model;
  std::optional<std::size_t> point;

  PointedPlausibilityModel pointed() const;
};

// {"agents","atoms","states","val","rel","point"}; unknown keys are rejected.
ModelFile model_from_json(const json& j);
json model_to_json(const KripkeModel& m, std::optional<std::size_t> point = std::nullopt);
json model_to_json(const PointedModel& m);

// As above with "epi" for "rel" and "rank": {"a": {"s0": 1}}.
PlausibilityFile plausibility_from_json(const json& j);
json plausibility_to_json(const PlausibilityModel& m, std::optional<std::size_t> point = std::nullopt);

// {"agents","atoms","states","pre","rel","point"}; "atoms" declares the
// signature the preconditions are parsed against.
PointedActionModel action_model_from_json(const json& j);
json action_model_to_json(const PointedActionModel& e);

/// True when the object has an "epi" key, i.e. it is a plausibility model.
bool is_plausibility_json(const json& j);

// {"bound": 10, "actual": [2,3], "parity": "actual"|"both",
//  "steps": [{"speaker","flavor","utterance"}]}
Scenario scenario_from_json(const json& j);
/// Per-step report with the model after each executed step.
json scenario_result_to_json(const ScenarioResult& r, const RiddleConfig& cfg);

json read_json_file(const std::string& path);

}  // namespace lying
