#include "lying/action_model.hpp"

#include <set>

#include "lying/error.hpp"

namespace lying {

ActionModel::ActionModel(std::vector<std::string> agents, std::vector<std::string> actions)
    : agents_(std::move(agents)), names_(std::move(actions)) {
  const std::size_t n = names_.size();
  std::set<std::string_view> seen;
  for (const auto& a : names_)
    if (!seen.insert(a).second) throw InputError("duplicate action '" + a + "'");
  succ_.assign(agents_.size(), std::vector<StateSet>(n, StateSet(n)));
  pre_.assign(n, Formula::top());
}

std::optional<std::size_t> ActionModel::find_action(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t ActionModel::action_index(std::string_view name) const {
  if (auto i = find_action(name)) return *i;
  throw InputError("unknown action '" + std::string(name) + "'");
}

std::optional<std::size_t> ActionModel::find_agent(std::string_view a) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i] == a) return i;
  return std::nullopt;
}

std::size_t ActionModel::agent_index(std::string_view a) const {
  if (auto i = find_agent(a)) return *i;
  throw SignatureError("action model has no relation for agent '" + std::string(a) + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> ActionModel::edges(std::size_t agent) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < num_actions(); ++s)
    succ_[agent][s].for_each([&](std::size_t t) { out.emplace_back(s, t); });
  return out;
}

void ActionModel::close_transitively() {
  const std::size_t n = num_actions();
  for (auto& rel : succ_)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (rel[i].test(k)) rel[i] |= rel[k];
}

bool operator==(const ActionModel& a, const ActionModel& b) {
  return a.agents_ == b.agents_ && a.names_ == b.names_ && a.succ_ == b.succ_ && a.pre_ == b.pre_;
}

PointedActionModel::PointedActionModel(ActionModel model, std::size_t point)
    : model_(std::move(model)), point_(point) {
  if (point_ >= model_.num_actions()) throw InputError("designated action out of range");
}

PointedActionModel::PointedActionModel(ActionModel model, std::string_view point)
    : model_(std::move(model)), point_(model_.action_index(point)) {}

// ---------------------------------------------------------------------------
// Product update

Product product(const KripkeModel& m, const ActionModel& a) {
  std::vector<StateSet> pre_ext;
  pre_ext.reserve(a.num_actions());
  for (std::size_t alpha = 0; alpha < a.num_actions(); ++alpha) pre_ext.push_back(extension(m, a.pre(alpha)));
  return product(m, a, pre_ext);
}

Product product(const KripkeModel& m, const ActionModel& a, const std::vector<StateSet>& pre_ext) {
  const std::size_t n = m.num_states();
  const std::size_t k = a.num_actions();

  std::vector<std::size_t> agent_map;
  for (const auto& ag : m.agents()) agent_map.push_back(a.agent_index(ag));

  Product out;
  out.index.assign(n, std::vector<std::size_t>(k, Product::npos));
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t alpha = 0; alpha < k; ++alpha) {
      if (!pre_ext[alpha].test(s)) continue;
      out.index[s][alpha] = names.size();
      names.push_back("(" + m.state_name(s) + "," + a.action_name(alpha) + ")");
      origin.emplace_back(s, alpha);
    }

  out.model = KripkeModel(m.signature(), std::move(names));
  const std::size_t pn = origin.size();
  for (std::size_t p = 0; p < m.atoms().size(); ++p) {
    StateSet v(pn);
    for (std::size_t i = 0; i < pn; ++i)
      if (m.valuation(p).test(origin[i].first)) v.set(i);
    out.model.set_valuation(p, std::move(v));
  }
  for (std::size_t c = 0; c < m.agents().size(); ++c) {
    const std::size_t ac = agent_map[c];
    for (std::size_t i = 0; i < pn; ++i) {
      const auto [s, alpha] = origin[i];
      StateSet succ(pn);
      m.successors(c, s).for_each([&](std::size_t t) {
        a.successors(ac, alpha).for_each([&](std::size_t beta) {
          if (out.index[t][beta] != Product::npos) succ.set(out.index[t][beta]);
        });
      });
      out.model.set_successors(c, i, std::move(succ));
    }
  }
  return out;
}

std::optional<PointedModel> product_update(const PointedModel& m, const PointedActionModel& e) {
  Product p = product(m.model, e.model());
  const std::size_t idx = p.index[m.point][e.point()];
  if (idx == Product::npos) return std::nullopt;
  return PointedModel{std::move(p.model), idx};
}

StateSet generic_extension(const KripkeModel& m, const PointedActionModel& e, const Formula& f) {
  const Product p = product(m, e.model());
  const StateSet inner = extension(p.model, f);
  StateSet out(m.num_states());
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const std::size_t idx = p.index[s][e.point()];
    if (idx == Product::npos || inner.test(idx)) out.set(s);
  }
  return out;
}

bool eval_generic(const PointedModel& m, const PointedActionModel& e, const Formula& f) {
  return generic_extension(m.model, e, f).test(m.point);
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

Formula believes_not(const std::string& agent, const Formula& f) {
  return Formula::believes(agent, Formula::neg(f));
}

// Preconditions of the truthful, lying and bluffing speaker attitudes.
Formula speaker_truth(const std::string& a, const Formula& f) { return Formula::believes(a, f); }
Formula speaker_lie(const std::string& a, const Formula& f) { return believes_not(a, f); }
Formula speaker_bluff(const std::string& a, const Formula& f) {
  return Formula::neg(Formula::disj(Formula::believes(a, f), believes_not(a, f)));
}

void require_agent(const std::vector<std::string>& agents, const std::string& a) {
  for (const auto& x : agents)
    if (x == a) return;
  throw SignatureError("unknown agent '" + a + "'");
}

const std::string& sole_observer(const std::vector<std::string>& agents) {
  if (agents.size() != 1)
    throw UnsupportedError("skeptical public announcement is defined for exactly one agent, got " +
                           std::to_string(agents.size()));
  return agents.front();
}

}  // namespace

ActionModel pub_action_model(const std::vector<std::string>& agents, const Formula& f) {
  ActionModel am(agents, {"truth", "lie"});
  am.set_pre(0, f);
  am.set_pre(1, Formula::neg(f));
  for (std::size_t c = 0; c < agents.size(); ++c) {
    am.add_edge(c, 0, 0);
    am.add_edge(c, 1, 0);
  }
  return am;
}

ActionModel agent_action_model(const std::vector<std::string>& agents, const std::string& speaker,
                               const Formula& f) {
  require_agent(agents, speaker);
  ActionModel am(agents, {"bluff", "truth", "lie"});
  am.set_pre(0, speaker_bluff(speaker, f));
  am.set_pre(1, speaker_truth(speaker, f));
  am.set_pre(2, speaker_lie(speaker, f));
  for (std::size_t c = 0; c < agents.size(); ++c)
    for (std::size_t alpha = 0; alpha < 3; ++alpha) am.add_edge(c, alpha, agents[c] == speaker ? alpha : 1);
  return am;
}

ActionModel sk_pub_action_model(const std::vector<std::string>& agents, const Formula& f) {
  const std::string& x = sole_observer(agents);
  const Formula believable = Formula::neg(believes_not(x, f));
  ActionModel am(agents, {"truth_sk", "lie_sk", "rej_sk"});
  am.set_pre(0, Formula::conj(f, believable));
  am.set_pre(1, Formula::conj(Formula::neg(f), believable));
  am.set_pre(2, believes_not(x, f));
  am.add_edge(0, 0, 0);
  am.add_edge(0, 1, 0);
  am.add_edge(0, 2, 2);
  return am;
}

ActionModel sk_agent_action_model(const std::vector<std::string>& agents, const std::string& speaker,
                                  const std::string& addressee, const Formula& f) {
  require_agent(agents, speaker);
  require_agent(agents, addressee);
  if (speaker == addressee) throw Error("speaker and addressee must differ");
  const Formula rejected = believes_not(addressee, f);
  const Formula believed = Formula::neg(rejected);
  const Formula base[3] = {speaker_truth(speaker, f), speaker_lie(speaker, f), speaker_bluff(speaker, f)};

  ActionModel am(agents, {"truth_sk", "lie_sk", "bluff_sk", "truth_skr", "lie_skr", "bluff_skr"});
  for (std::size_t i = 0; i < 3; ++i) {
    am.set_pre(i, Formula::conj(base[i], believed));
    am.set_pre(i + 3, Formula::conj(base[i], rejected));
  }
  for (std::size_t c = 0; c < agents.size(); ++c) {
    if (agents[c] == speaker) {
      for (std::size_t i = 0; i < 3; ++i) {
        am.add_edge(c, i, i);
        am.add_edge(c, i + 3, i + 3);
        am.add_edge(c, i, i + 3);
        am.add_edge(c, i + 3, i);
      }
    } else {
      for (std::size_t i = 0; i < 3; ++i) am.add_edge(c, i, 0);
      for (std::size_t i = 3; i < 6; ++i)
        for (std::size_t j = 3; j < 6; ++j) am.add_edge(c, i, j);
    }
  }
  am.close_transitively();
  return am;
}

std::string skeptical_addressee(const std::vector<std::string>& agents, const std::string& speaker) {
  require_agent(agents, speaker);
  for (const auto& a : agents)
    if (a != speaker) return a;
  throw UnsupportedError("skeptical agent announcement needs an addressee besides '" + speaker + "'");
}

namespace {

struct BuiltinSlot {
  int family;  // 0 public, 1 agent, 2 skeptical public, 3 skeptical agent
  std::size_t action;
};

BuiltinSlot slot_of(Flavor f) {
  switch (f) {
    case Flavor::PubTruth:
      return {0, 0};
    case Flavor::PubLie:
      return {0, 1};
    case Flavor::AgBluff:
      return {1, 0};
    case Flavor::AgTruth:
      return {1, 1};
    case Flavor::AgLie:
      return {1, 2};
    case Flavor::SkPubTruth:
      return {2, 0};
    case Flavor::SkPubLie:
      return {2, 1};
    case Flavor::SkPubReject:
      return {2, 2};
    case Flavor::SkAgTruth:
      return {3, 0};
    case Flavor::SkAgLie:
      return {3, 1};
    case Flavor::SkAgBluff:
      return {3, 2};
    case Flavor::SkAgTruthRejected:
      return {3, 3};
    case Flavor::SkAgLieRejected:
      return {3, 4};
    case Flavor::SkAgBluffRejected:
      return {3, 5};
    default:
      break;
  }
  throw UnsupportedError("announcement '" + std::string(flavor_keyword(f)) +
                         "' has no builtin Kripke action model");
}

constexpr Flavor kFamilyFlavors[4][6] = {
    {Flavor::PubTruth, Flavor::PubLie},
    {Flavor::AgBluff, Flavor::AgTruth, Flavor::AgLie},
    {Flavor::SkPubTruth, Flavor::SkPubLie, Flavor::SkPubReject},
    {Flavor::SkAgTruth, Flavor::SkAgLie, Flavor::SkAgBluff, Flavor::SkAgTruthRejected,
     Flavor::SkAgLieRejected, Flavor::SkAgBluffRejected},
};

}  // namespace

PointedActionModel builtin_action(const std::vector<std::string>& agents, const Announcement& a) {
  if (a.flavor == Flavor::GenericAction) return *a.action;
  const BuiltinSlot slot = slot_of(a.flavor);
  const Formula& f = a.formula();
  switch (slot.family) {
    case 0:
      return {pub_action_model(agents, f), slot.action};
    case 1:
      return {agent_action_model(agents, a.speaker, f), slot.action};
    case 2:
      return {sk_pub_action_model(agents, f), slot.action};
    default:
      return {sk_agent_action_model(agents, a.speaker, skeptical_addressee(agents, a.speaker), f),
              slot.action};
  }
}

Announcement sibling_announcement(const Announcement& family, const PointedActionModel& builtin,
                                  std::size_t action) {
  if (family.flavor == Flavor::GenericAction) return Announcement::generic(builtin.at(action));
  const Flavor f = kFamilyFlavors[slot_of(family.flavor).family][action];
  if (is_agent_flavor(f)) return Announcement::make(f, family.speaker, family.formula());
  return Announcement::make(f, family.formula());
}

Formula flavor_precondition(const std::vector<std::string>& agents, const Announcement& a) {
  switch (a.flavor) {
    case Flavor::PlPubTruth:
      return a.formula();
    case Flavor::PlPubLie:
      return Formula::neg(a.formula());
    case Flavor::PlAgTruth:
      return speaker_truth(a.speaker, a.formula());
    case Flavor::PlAgLie:
      return speaker_lie(a.speaker, a.formula());
    case Flavor::PlAgBluff:
      return speaker_bluff(a.speaker, a.formula());
    default: {
      const PointedActionModel e = builtin_action(agents, a);
      return e.model().pre(e.point());
    }
  }
}

}  // namespace lying
