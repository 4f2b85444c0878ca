#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lying/formula.hpp"
#include "lying/state_set.hpp"

namespace lying {

/// Finite multi-agent Kripke model (S, R, V). States are indexed 0..n-1 and
/// carry unique names; R_a is stored as per-state successor sets.
class KripkeModel {
 public:
  KripkeModel() = default;
  KripkeModel(Signature sig, std::vector<std::string> states);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& agents() const { return sig_.agents; }
  const std::vector<std::string>& atoms() const { return sig_.atoms; }

  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(std::size_t s) const { return names_[s]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<std::size_t> find_state(std::string_view name) const;
  std::size_t state_index(std::string_view name) const;  // throws InputError

  /// Throws SignatureError for undeclared names.
  std::size_t agent_index(std::string_view a) const;
  std::size_t atom_index(std::string_view p) const;

  const StateSet& successors(std::size_t agent, std::size_t s) const { return succ_[agent][s]; }
  void set_successors(std::size_t agent, std::size_t s, StateSet succ);
  bool has_edge(std::size_t agent, std::size_t from, std::size_t to) const {
    return succ_[agent][from].test(to);
  }
  void add_edge(std::size_t agent, std::size_t from, std::size_t to) {
    succ_[agent][from].set(to);
  }
  void add_edge(std::string_view agent, std::string_view from, std::string_view to);
  void clear_relation(std::size_t agent);

  const StateSet& valuation(std::size_t atom) const { return val_[atom]; }
  void set_valuation(std::size_t atom, StateSet v);
  void set_true(std::string_view atom, std::string_view state);

  std::vector<std::pair<std::size_t, std::size_t>> edges(std::size_t agent) const;
  StateSet all_states() const { return StateSet(num_states(), true); }

  /// Identical structure: same signature, state names, relations, valuation.
  friend bool operator==(const KripkeModel& a, const KripkeModel& b);

 private:
  Signature sig_;
  std::vector<std::string> names_;
  std::vector<std::vector<StateSet>> succ_;  // [agent][state]
  std::vector<StateSet> val_;                // [atom]
};

struct PointedModel {
  KripkeModel model;
  std::size_t point = 0;

  const std::string& point_name() const { return model.state_name(point); }
  friend bool operator==(const PointedModel&, const PointedModel&) = default;
};

PointedModel make_pointed(KripkeModel m, std::string_view point);

enum class ModelClass { K, K45, KD45, S5 };

std::string_view to_string(ModelClass c);
std::optional<ModelClass> parse_model_class(std::string_view s);

/// Every class the model belongs to; K is always present.
std::set<ModelClass> class_of(const KripkeModel& m);
bool in_class(const KripkeModel& m, ModelClass c);

/// Frame properties of one agent's relation.
bool is_serial(const KripkeModel& m, std::size_t agent);
bool is_transitive(const KripkeModel& m, std::size_t agent);
bool is_euclidean(const KripkeModel& m, std::size_t agent);
bool is_reflexive(const KripkeModel& m, std::size_t agent);
bool is_symmetric(const KripkeModel& m, std::size_t agent);

/// Truth set of f. Knows and conditional belief are rejected on plain Kripke
/// models; announcements dispatch to the update and action-model semantics.
StateSet extension(const KripkeModel& m, const Formula& f);
bool eval(const PointedModel& m, const Formula& f);

/// A formula prepared once for evaluation on many models with the given
/// agents (in order). Repeated subformulas and updates are computed once per
/// model.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::vector<std::string> agents);
  StateSet extension(const KripkeModel& m) const;

  struct Program;

 private:
  std::shared_ptr<const Program> prog_;
};

/// Bisimulation classes of the disjoint union of the two models by partition
/// refinement; true iff the points land in the same class.
bool bisimilar(const PointedModel& a, const PointedModel& b);

/// Coarsest bisimulation partition of one model: block id per state.
std::vector<std::size_t> bisimulation_classes(const KripkeModel& m);

/// Deterministic Graphviz rendering; the point (if any) is double-circled.
std::string to_dot(const KripkeModel& m, std::optional<std::size_t> point = std::nullopt);
std::string to_dot(const PointedModel& m);

}  // namespace lying
