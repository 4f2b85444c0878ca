#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lying/formula.hpp"
#include "lying/kripke.hpp"
#include "lying/state_set.hpp"

namespace lying {

/// Action model (A, R, pre). Relations are per-agent successor sets over
/// action indices, mirroring KripkeModel.
class ActionModel {
 public:
  ActionModel() = default;
  ActionModel(std::vector<std::string> agents, std::vector<std::string> actions);

  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& actions() const { return names_; }
  std::size_t num_actions() const { return names_.size(); }
  const std::string& action_name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> find_action(std::string_view name) const;
  std::size_t action_index(std::string_view name) const;  // throws InputError
  std::optional<std::size_t> find_agent(std::string_view a) const;
  std::size_t agent_index(std::string_view a) const;  // throws SignatureError

  const std::vector<Formula>& preconditions() const { return pre_; }
  const Formula& pre(std::size_t action) const { return pre_[action]; }
  void set_pre(std::size_t action, Formula f) { pre_[action] = std::move(f); }

  const StateSet& successors(std::size_t agent, std::size_t action) const {
    return succ_[agent][action];
  }
  bool has_edge(std::size_t agent, std::size_t from, std::size_t to) const {
    return succ_[agent][from].test(to);
  }
  void add_edge(std::size_t agent, std::size_t from, std::size_t to) {
    succ_[agent][from].set(to);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges(std::size_t agent) const;

  /// Replaces every relation by its transitive closure.
  void close_transitively();

  friend bool operator==(const ActionModel& a, const ActionModel& b);

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> names_;
  std::vector<std::vector<StateSet>> succ_;  // [agent][action]
  std::vector<Formula> pre_;
};

class PointedActionModel {
 public:
  PointedActionModel(ActionModel model, std::size_t point);
  PointedActionModel(ActionModel model, std::string_view point);

  const ActionModel& model() const { return model_; }
  std::size_t point() const { return point_; }
  const std::string& point_name() const { return model_.action_name(point_); }
  PointedActionModel at(std::size_t action) const { return {model_, action}; }

  friend bool operator==(const PointedActionModel&, const PointedActionModel&) = default;

 private:
  ActionModel model_;
  std::size_t point_;
};

/// Restricted modal product M (x) A. `index[s][alpha]` is the product state
/// for (s, alpha), or npos when s fails pre(alpha).
struct Product {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  KripkeModel model;
  std::vector<std::vector<std::size_t>> index;
};

/// Every agent of the Kripke model must have a relation in the action model.
Product product(const KripkeModel& m, const ActionModel& a);
/// Same, with the precondition extensions already known.
Product product(const KripkeModel& m, const ActionModel& a, const std::vector<StateSet>& pre_ext);
std::optional<PointedModel> product_update(const PointedModel& m, const PointedActionModel& e);

/// M,s |= [A,alpha] f; vacuously true when pre(alpha) fails at s.
bool eval_generic(const PointedModel& m, const PointedActionModel& e, const Formula& f);
/// Truth set of [A,alpha] f over the whole model.
StateSet generic_extension(const KripkeModel& m, const PointedActionModel& e, const Formula& f);

// Builtin action models. Action names follow the surface keywords.

/// {truth: f, lie: ~f}; every agent only considers truth possible.
ActionModel pub_action_model(const std::vector<std::string>& agents, const Formula& f);
/// {bluff, truth, lie} for `speaker`: identity for the speaker, every other
/// agent only considers truth possible.
ActionModel agent_action_model(const std::vector<std::string>& agents, const std::string& speaker,
                               const Formula& f);
/// {truth_sk, lie_sk, rej_sk} for a single observer; UnsupportedError when
/// `agents` does not have exactly one element.
ActionModel sk_pub_action_model(const std::vector<std::string>& agents, const Formula& f);
/// Six-action model: believed row {truth_sk, lie_sk, bluff_sk}, rejected row
/// {truth_skr, lie_skr, bluff_skr}. Agents other than speaker and addressee
/// get the addressee's access.
ActionModel sk_agent_action_model(const std::vector<std::string>& agents, const std::string& speaker,
                                  const std::string& addressee, const Formula& f);

/// Addressee of a skeptical agent announcement: the first agent in signature
/// order other than the speaker.
std::string skeptical_addressee(const std::vector<std::string>& agents, const std::string& speaker);

/// The builtin pointed action model realizing a Pub/Ag/Sk announcement over
/// the given agents, or the embedded model of a GenericAction. Plausible
/// flavors raise UnsupportedError.
PointedActionModel builtin_action(const std::vector<std::string>& agents, const Announcement& a);

/// Inverse of builtin_action for the announcement families: the announcement
/// naming action `action` of the same builtin model as `family`.
Announcement sibling_announcement(const Announcement& family, const PointedActionModel& builtin,
                                  std::size_t action);

/// Precondition of a flavor, given the agent list (needed by skeptical
/// flavors for the observer or addressee).
Formula flavor_precondition(const std::vector<std::string>& agents, const Announcement& a);

}  // namespace lying
