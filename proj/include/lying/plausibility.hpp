#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lying/formula.hpp"
#include "lying/kripke.hpp"
#include "lying/state_set.hpp"

namespace lying {

/// Plausibility model (S, ~, rank, V). Each ~_a is an equivalence relation;
/// lower rank means more plausible. Ranks are only compared inside a ~_a class.
class PlausibilityModel {
 public:
  PlausibilityModel() = default;
  PlausibilityModel(Signature sig, std::vector<std::string> states);

  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& agents() const { return sig_.agents; }
  const std::vector<std::string>& atoms() const { return sig_.atoms; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(std::size_t s) const { return names_[s]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<std::size_t> find_state(std::string_view name) const;
  std::size_t state_index(std::string_view name) const;
  std::size_t agent_index(std::string_view a) const;
  std::size_t atom_index(std::string_view p) const;

  /// The ~_a class of s.
  const StateSet& cell(std::size_t agent, std::size_t s) const { return epi_[agent][s]; }
  void set_cell(std::size_t agent, std::size_t s, StateSet c) { epi_[agent][s] = std::move(c); }
  void add_epi_edge(std::size_t agent, std::size_t s, std::size_t t) { epi_[agent][s].set(t); }

  unsigned rank(std::size_t agent, std::size_t s) const { return rank_[agent][s]; }
  void set_rank(std::size_t agent, std::size_t s, unsigned r) { rank_[agent][s] = r; }

  const StateSet& valuation(std::size_t atom) const { return val_[atom]; }
  void set_valuation(std::size_t atom, StateSet v) { val_[atom] = std::move(v); }

  /// Throws InputError unless every ~_a is an equivalence relation.
  void validate() const;

  friend bool operator==(const PlausibilityModel&, const PlausibilityModel&) = default;

 private:
  Signature sig_;
  std::vector<std::string> names_;
  std::vector<std::vector<StateSet>> epi_;  // [agent][state]
  std::vector<std::vector<unsigned>> rank_;  // [agent][state]
  std::vector<StateSet> val_;
};

struct PointedPlausibilityModel {
  PlausibilityModel model;
  std::size_t point = 0;

  const std::string& point_name() const { return model.state_name(point); }
  friend bool operator==(const PointedPlausibilityModel&, const PointedPlausibilityModel&) = default;
};

/// Derived belief accessibility: (s,t) iff s ~_a t and t is rank-minimal in
/// the class of s. Returned as successor rows.
std::vector<StateSet> belief_relation(const PlausibilityModel& m, std::size_t agent);
std::vector<StateSet> belief_relation(const PlausibilityModel& m, std::string_view agent);
/// The Kripke model whose relations are the derived belief relations.
KripkeModel belief_model(const PlausibilityModel& m);

/// Believes uses the derived relation, Knows uses ~_a, and B{a|c} looks at the
/// rank-minimal c-states of the class. Supported announcements: truth (hard
/// state elimination) and the plausible flavors; others raise UnsupportedError.
StateSet extension(const PlausibilityModel& m, const Formula& f);
bool eval_pl(const PointedPlausibilityModel& m, const Formula& f);

PlausibilityModel hard_restrict(const PlausibilityModel& m, const Formula& f);
PlausibilityModel restrict_to(const PlausibilityModel& m, const StateSet& keep);
/// Throws Error when the point is eliminated.
PointedPlausibilityModel hard_restrict(const PointedPlausibilityModel& m, const Formula& f);

/// Plausibility action model (A, ~, rank, pre).
class PlausibilityActionModel {
 public:
  PlausibilityActionModel(std::vector<std::string> agents, std::vector<std::string> actions);

  const std::vector<std::string>& agents() const { return agents_; }
  std::size_t num_actions() const { return names_.size(); }
  const std::string& action_name(std::size_t i) const { return names_[i]; }
  std::size_t action_index(std::string_view name) const;
  std::size_t agent_index(std::string_view a) const;

  const Formula& pre(std::size_t action) const { return pre_[action]; }
  void set_pre(std::size_t action, Formula f) { pre_[action] = std::move(f); }
  const StateSet& cell(std::size_t agent, std::size_t action) const { return epi_[agent][action]; }
  void add_epi_edge(std::size_t agent, std::size_t x, std::size_t y) { epi_[agent][x].set(y); }
  unsigned rank(std::size_t agent, std::size_t action) const { return rank_[agent][action]; }
  void set_rank(std::size_t agent, std::size_t action, unsigned r) { rank_[agent][action] = r; }

  /// Derived belief relation on actions, as for states.
  std::vector<StateSet> belief_relation(std::size_t agent) const;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> names_;
  std::vector<std::vector<StateSet>> epi_;
  std::vector<std::vector<unsigned>> rank_;
  std::vector<Formula> pre_;
};

/// {truth_pl: f rank 0, lie_pl: ~f rank 1}, universal ~ for every agent.
PlausibilityActionModel pl_pub_action_model(const std::vector<std::string>& agents, const Formula& f);
/// {bluff_pl, truth_pl, lie_pl}: identity ~ and rank 0 for the speaker;
/// universal ~ with ranks truth 0, bluff 1, lie 2 for every other agent.
PlausibilityActionModel pl_agent_action_model(const std::vector<std::string>& agents,
                                              const std::string& speaker, const Formula& f);

struct PlausibilityProduct {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  PlausibilityModel model;
  std::vector<std::vector<std::size_t>> index;  // [state][action]
};

/// Product with anti-lexicographic ranks: action rank first, state rank
/// breaks ties; renumbered to consecutive naturals per ~ class.
PlausibilityProduct pl_product(const PlausibilityModel& m, const PlausibilityActionModel& a);
std::optional<PointedPlausibilityModel> pl_product_update(const PointedPlausibilityModel& m,
                                                          const PlausibilityActionModel& a,
                                                          std::size_t action);

/// Builtin plausibility action model and point for a Pl* announcement.
std::pair<PlausibilityActionModel, std::size_t> plausible_action(const std::vector<std::string>& agents,
                                                                const Announcement& a);

/// Every plausibility model with 1..max_states states, ~ ranging over all
/// partitions and ranks over 0..num_ranks-1. Stops when fn returns false.
void for_each_plausibility_model(const Signature& sig, std::size_t max_states, unsigned num_ranks,
                                 const std::function<bool(const PlausibilityModel&)>& fn);

}  // namespace lying
