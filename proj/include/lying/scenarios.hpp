#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lying/formula.hpp"
#include "lying/kripke.hpp"
#include "lying/plausibility.hpp"
#include "lying/update.hpp"

namespace lying {

// Consecutive numbers riddle. Anne is agent "a", Bill is agent "b"; atom
// "a<m>" says Anne was told m and "b<n>" that Bill was told n. A state
// (m,n) is named "(m,n)".

enum class Parity { Both, ActualOnly };

struct RiddleConfig {
  unsigned bound = 10;
  std::pair<unsigned, unsigned> actual{2, 3};
  Parity parity = Parity::ActualOnly;
};

std::string riddle_state_name(unsigned m, unsigned n);
/// Inverse of riddle_state_name; empty for other names.
std::optional<std::pair<unsigned, unsigned>> parse_riddle_state(std::string_view name);

/// Pairs with |m-n| = 1 up to the bound, equivalence relations for both
/// agents, pointed at the actual pair. Throws InputError when the actual pair
/// is not consecutive or exceeds the bound.
PointedModel riddle_model(const RiddleConfig& cfg);
/// The same model as a plausibility model with every rank 0.
PointedPlausibilityModel riddle_plausibility_model(const RiddleConfig& cfg);

enum class Utterance { KnowsNumber, NotKnowsNumber, ThatsALie };

std::string_view to_string(Utterance u);
std::optional<Utterance> parse_utterance(std::string_view s);

/// KnowsNumber(a) = (b0 & B{a} b0) | ... | (bN & B{a} bN), symmetrically for
/// b; ThatsALie(x) = B{x} false.
Formula expand_utterance(Utterance u, const std::string& speaker, const RiddleConfig& cfg);

struct ScenarioStep {
  std::string speaker;
  std::string flavor;  // truth, lie or bluff
  Utterance utterance;
};

struct Scenario {
  RiddleConfig config;
  std::vector<ScenarioStep> steps;
};

/// Restrict: truthful public announcements by state elimination (the classic
/// analysis; only "truth" steps). Direct: agent announcements. Skeptical: the
/// skeptical agent actions, believed or rejected row chosen by whether the
/// addressee already believes the negation. Plausible: plausible agent
/// announcements on the rank-0 plausibility model.
enum class ScenarioMode { Restrict, Direct, Skeptical, Plausible };

std::string_view to_string(ScenarioMode m);
std::optional<ScenarioMode> parse_scenario_mode(std::string_view s);

struct StepReport {
  std::size_t index = 0;  // 1-based
  ScenarioStep step;
  Formula formula = Formula::top();
  Announcement announcement;
  bool executed = false;
  std::optional<AnnouncementFlavor> classification;
  /// detect() for the non-speaker, evaluated before the step.
  std::optional<Detection> detection;
  std::string observer;
  /// Some state within modal-depth distance of the point is already
  /// distorted by the truncation.
  bool boundary_dependent = false;
  std::string note;
};

struct ScenarioResult {
  ScenarioMode mode = ScenarioMode::Direct;
  PointedModel initial;
  /// One model per executed step. In plausible mode these are the belief
  /// views of `plausibility`.
  std::vector<PointedModel> models;
  std::vector<PointedPlausibilityModel> plausibility;
  std::vector<StepReport> steps;
  bool stopped = false;
};

ScenarioResult run_scenario(const Scenario& sc, ScenarioMode mode);

/// Whether state (m,n) still behaves as in the infinite model after k
/// updates: max(m,n) + k < bound.
bool faithful(const RiddleConfig& cfg, std::pair<unsigned, unsigned> state, std::size_t k);

/// Points of the model that are faithful after k updates.
std::vector<std::string> faithful_states(const KripkeModel& m, const RiddleConfig& cfg, std::size_t k);

}  // namespace lying
