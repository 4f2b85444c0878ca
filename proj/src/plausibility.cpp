#include "lying/plausibility.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "lying/action_model.hpp"
#include "lying/enumerate.hpp"
#include "lying/error.hpp"

namespace lying {

PlausibilityModel::PlausibilityModel(Signature sig, std::vector<std::string> states)
    : sig_(std::move(sig)), names_(std::move(states)) {
  const std::size_t n = names_.size();
  std::set<std::string_view> seen;
  for (const auto& s : names_)
    if (!seen.insert(s).second) throw InputError("duplicate state '" + s + "'");
  epi_.assign(sig_.agents.size(), std::vector<StateSet>(n, StateSet(n)));
  rank_.assign(sig_.agents.size(), std::vector<unsigned>(n, 0));
  val_.assign(sig_.atoms.size(), StateSet(n));
}

std::optional<std::size_t> PlausibilityModel::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t PlausibilityModel::state_index(std::string_view name) const {
  if (auto i = find_state(name)) return *i;
  throw InputError("unknown state '" + std::string(name) + "'");
}

std::size_t PlausibilityModel::agent_index(std::string_view a) const {
  for (std::size_t i = 0; i < sig_.agents.size(); ++i)
    if (sig_.agents[i] == a) return i;
  throw SignatureError("unknown agent '" + std::string(a) + "'");
}

std::size_t PlausibilityModel::atom_index(std::string_view p) const {
  for (std::size_t i = 0; i < sig_.atoms.size(); ++i)
    if (sig_.atoms[i] == p) return i;
  throw SignatureError("unknown atom '" + std::string(p) + "'");
}

void PlausibilityModel::validate() const {
  for (std::size_t a = 0; a < agents().size(); ++a)
    for (std::size_t s = 0; s < num_states(); ++s) {
      const StateSet& c = epi_[a][s];
      bool ok = c.test(s);
      c.for_each([&](std::size_t t) { ok = ok && epi_[a][t] == c; });
      if (!ok)
        throw InputError("epistemic relation of '" + agents()[a] + "' is not an equivalence at '" +
                         names_[s] + "'");
    }
}

// ---------------------------------------------------------------------------
// Belief

namespace {

// Rank-minimal members of `candidates` (all inside one class).
template <class RankFn>
StateSet minimal(const StateSet& candidates, RankFn&& rank) {
  StateSet out(candidates.size());
  unsigned best = ~0u;
  candidates.for_each([&](std::size_t t) { best = std::min(best, rank(t)); });
  candidates.for_each([&](std::size_t t) {
    if (rank(t) == best) out.set(t);
  });
  return out;
}

}  // namespace

std::vector<StateSet> belief_relation(const PlausibilityModel& m, std::size_t agent) {
  std::vector<StateSet> rows;
  rows.reserve(m.num_states());
  for (std::size_t s = 0; s < m.num_states(); ++s)
    rows.push_back(minimal(m.cell(agent, s), [&](std::size_t t) { return m.rank(agent, t); }));
  return rows;
}

std::vector<StateSet> belief_relation(const PlausibilityModel& m, std::string_view agent) {
  return belief_relation(m, m.agent_index(agent));
}

KripkeModel belief_model(const PlausibilityModel& m) {
  KripkeModel k(m.signature(), m.state_names());
  for (std::size_t p = 0; p < m.atoms().size(); ++p) k.set_valuation(p, m.valuation(p));
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    auto rows = belief_relation(m, a);
    for (std::size_t s = 0; s < m.num_states(); ++s) k.set_successors(a, s, std::move(rows[s]));
  }
  return k;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

StateSet box_rows(const std::vector<StateSet>& rows, const StateSet& target) {
  StateSet out(rows.size());
  for (std::size_t s = 0; s < rows.size(); ++s)
    if (rows[s].subset_of(target)) out.set(s);
  return out;
}

StateSet dynamic_extension(const PlausibilityModel& m, const Announcement& a, const Formula& body) {
  if (a.flavor == Flavor::PubTruth) {
    const StateSet pre = extension(m, a.formula());
    const PlausibilityModel r = restrict_to(m, pre);
    const StateSet inner = extension(r, body);
    StateSet out = ~pre;
    std::size_t i = 0;
    pre.for_each([&](std::size_t s) {
      if (inner.test(i++)) out.set(s);
    });
    return out;
  }
  if (!is_plausible(a.flavor))
    throw UnsupportedError("'" + print(a) + "' is not defined on plausibility models");
  const auto [am, alpha] = plausible_action(m.agents(), a);
  const PlausibilityProduct p = pl_product(m, am);
  const StateSet inner = extension(p.model, body);
  StateSet out(m.num_states());
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const std::size_t idx = p.index[s][alpha];
    if (idx == PlausibilityProduct::npos || inner.test(idx)) out.set(s);
  }
  return out;
}

}  // namespace

StateSet extension(const PlausibilityModel& m, const Formula& f) {
  const std::size_t n = m.num_states();
  switch (f.op()) {
    case Op::Atom:
      return m.valuation(m.atom_index(f.name()));
    case Op::Top:
      return StateSet(n, true);
    case Op::Bot:
      return StateSet(n);
    case Op::Not:
      return ~extension(m, f.lhs());
    case Op::And:
      return extension(m, f.lhs()) & extension(m, f.rhs());
    case Op::Or:
      return extension(m, f.lhs()) | extension(m, f.rhs());
    case Op::Implies:
      return ~extension(m, f.lhs()) | extension(m, f.rhs());
    case Op::Iff: {
      const StateSet l = extension(m, f.lhs());
      const StateSet r = extension(m, f.rhs());
      return (l & r) | (~l & ~r);
    }
    case Op::Believes:
      return box_rows(belief_relation(m, m.agent_index(f.name())), extension(m, f.body()));
    case Op::Knows: {
      const std::size_t a = m.agent_index(f.name());
      const StateSet body = extension(m, f.body());
      StateSet out(n);
      for (std::size_t s = 0; s < n; ++s)
        if (m.cell(a, s).subset_of(body)) out.set(s);
      return out;
    }
    case Op::CondBelieves: {
      const std::size_t a = m.agent_index(f.name());
      const StateSet cond = extension(m, f.lhs());
      const StateSet body = extension(m, f.body());
      StateSet out(n);
      for (std::size_t s = 0; s < n; ++s) {
        const StateSet best = minimal(m.cell(a, s) & cond, [&](std::size_t t) { return m.rank(a, t); });
        if (best.subset_of(body)) out.set(s);
      }
      return out;
    }
    case Op::Dyn:
      return dynamic_extension(m, f.announcement(), f.body());
  }
  throw Error("unhandled formula node");
}

bool eval_pl(const PointedPlausibilityModel& m, const Formula& f) {
  return extension(m.model, f).test(m.point);
}

PlausibilityModel restrict_to(const PlausibilityModel& m, const StateSet& keep) {
  std::vector<std::size_t> old_of;
  std::vector<std::size_t> new_of(m.num_states(), PlausibilityProduct::npos);
  std::vector<std::string> names;
  keep.for_each([&](std::size_t s) {
    new_of[s] = old_of.size();
    old_of.push_back(s);
    names.push_back(m.state_name(s));
  });
  const std::size_t n = old_of.size();
  PlausibilityModel out(m.signature(), std::move(names));
  for (std::size_t p = 0; p < m.atoms().size(); ++p) {
    StateSet v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (m.valuation(p).test(old_of[i])) v.set(i);
    out.set_valuation(p, std::move(v));
  }
  for (std::size_t a = 0; a < m.agents().size(); ++a)
    for (std::size_t i = 0; i < n; ++i) {
      StateSet c(n);
      m.cell(a, old_of[i]).for_each([&](std::size_t t) {
        if (new_of[t] != PlausibilityProduct::npos) c.set(new_of[t]);
      });
      out.set_cell(a, i, std::move(c));
      out.set_rank(a, i, m.rank(a, old_of[i]));
    }
  return out;
}

PlausibilityModel hard_restrict(const PlausibilityModel& m, const Formula& f) {
  return restrict_to(m, extension(m, f));
}

PointedPlausibilityModel hard_restrict(const PointedPlausibilityModel& m, const Formula& f) {
  const StateSet keep = extension(m.model, f);
  if (!keep.test(m.point)) throw Error("point '" + m.point_name() + "' is eliminated by " + print(f));
  std::size_t point = 0;
  for (std::size_t s = 0; s < m.point; ++s) point += keep.test(s);
  return {restrict_to(m.model, keep), point};
}

// ---------------------------------------------------------------------------
// Action models

PlausibilityActionModel::PlausibilityActionModel(std::vector<std::string> agents,
                                                 std::vector<std::string> actions)
    : agents_(std::move(agents)), names_(std::move(actions)) {
  const std::size_t n = names_.size();
  epi_.assign(agents_.size(), std::vector<StateSet>(n, StateSet(n)));
  rank_.assign(agents_.size(), std::vector<unsigned>(n, 0));
  pre_.assign(n, Formula::top());
}

std::size_t PlausibilityActionModel::action_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw InputError("unknown action '" + std::string(name) + "'");
}

std::size_t PlausibilityActionModel::agent_index(std::string_view a) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i] == a) return i;
  throw SignatureError("action model has no relation for agent '" + std::string(a) + "'");
}

std::vector<StateSet> PlausibilityActionModel::belief_relation(std::size_t agent) const {
  std::vector<StateSet> rows;
  for (std::size_t x = 0; x < num_actions(); ++x)
    rows.push_back(minimal(epi_[agent][x], [&](std::size_t y) { return rank_[agent][y]; }));
  return rows;
}

PlausibilityActionModel pl_pub_action_model(const std::vector<std::string>& agents, const Formula& f) {
  PlausibilityActionModel am(agents, {"truth_pl", "lie_pl"});
  am.set_pre(0, f);
  am.set_pre(1, Formula::neg(f));
  for (std::size_t c = 0; c < agents.size(); ++c) {
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) am.add_epi_edge(c, x, y);
    am.set_rank(c, 0, 0);
    am.set_rank(c, 1, 1);
  }
  return am;
}

PlausibilityActionModel pl_agent_action_model(const std::vector<std::string>& agents,
                                              const std::string& speaker, const Formula& f) {
  if (std::find(agents.begin(), agents.end(), speaker) == agents.end())
    throw SignatureError("unknown agent '" + speaker + "'");
  PlausibilityActionModel am(agents, {"bluff_pl", "truth_pl", "lie_pl"});
  const Formula bf = Formula::believes(speaker, f);
  const Formula bnf = Formula::believes(speaker, Formula::neg(f));
  am.set_pre(0, Formula::neg(Formula::disj(bf, bnf)));
  am.set_pre(1, bf);
  am.set_pre(2, bnf);
  constexpr unsigned kAddresseeRank[3] = {1, 0, 2};
  for (std::size_t c = 0; c < agents.size(); ++c) {
    for (std::size_t x = 0; x < 3; ++x) {
      if (agents[c] == speaker) {
        am.add_epi_edge(c, x, x);
      } else {
        for (std::size_t y = 0; y < 3; ++y) am.add_epi_edge(c, x, y);
        am.set_rank(c, x, kAddresseeRank[x]);
      }
    }
  }
  return am;
}

std::pair<PlausibilityActionModel, std::size_t> plausible_action(const std::vector<std::string>& agents,
                                                                const Announcement& a) {
  switch (a.flavor) {
    case Flavor::PlPubTruth:
      return {pl_pub_action_model(agents, a.formula()), 0};
    case Flavor::PlPubLie:
      return {pl_pub_action_model(agents, a.formula()), 1};
    case Flavor::PlAgBluff:
      return {pl_agent_action_model(agents, a.speaker, a.formula()), 0};
    case Flavor::PlAgTruth:
      return {pl_agent_action_model(agents, a.speaker, a.formula()), 1};
    case Flavor::PlAgLie:
      return {pl_agent_action_model(agents, a.speaker, a.formula()), 2};
    default:
      throw UnsupportedError("'" + print(a) + "' is not a plausible announcement");
  }
}

PlausibilityProduct pl_product(const PlausibilityModel& m, const PlausibilityActionModel& a) {
  const std::size_t n = m.num_states();
  const std::size_t k = a.num_actions();
  std::vector<StateSet> pre_ext;
  for (std::size_t x = 0; x < k; ++x) pre_ext.push_back(extension(m, a.pre(x)));
  std::vector<std::size_t> agent_map;
  for (const auto& ag : m.agents()) agent_map.push_back(a.agent_index(ag));

  PlausibilityProduct out;
  out.index.assign(n, std::vector<std::size_t>(k, PlausibilityProduct::npos));
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t x = 0; x < k; ++x) {
      if (!pre_ext[x].test(s)) continue;
      out.index[s][x] = names.size();
      names.push_back("(" + m.state_name(s) + "," + a.action_name(x) + ")");
      origin.emplace_back(s, x);
    }
  const std::size_t pn = origin.size();
  out.model = PlausibilityModel(m.signature(), std::move(names));
  for (std::size_t p = 0; p < m.atoms().size(); ++p) {
    StateSet v(pn);
    for (std::size_t i = 0; i < pn; ++i)
      if (m.valuation(p).test(origin[i].first)) v.set(i);
    out.model.set_valuation(p, std::move(v));
  }
  for (std::size_t c = 0; c < m.agents().size(); ++c) {
    const std::size_t ac = agent_map[c];
    auto key = [&](std::size_t i) {
      return std::make_pair(a.rank(ac, origin[i].second), m.rank(c, origin[i].first));
    };
    for (std::size_t i = 0; i < pn; ++i) {
      const auto [s, x] = origin[i];
      StateSet cell(pn);
      m.cell(c, s).for_each([&](std::size_t t) {
        a.cell(ac, x).for_each([&](std::size_t y) {
          if (out.index[t][y] != PlausibilityProduct::npos) cell.set(out.index[t][y]);
        });
      });
      std::set<std::pair<unsigned, unsigned>> keys;
      cell.for_each([&](std::size_t j) { keys.insert(key(j)); });
      out.model.set_rank(c, i, static_cast<unsigned>(std::distance(keys.begin(), keys.find(key(i)))));
      out.model.set_cell(c, i, std::move(cell));
    }
  }
  return out;
}

std::optional<PointedPlausibilityModel> pl_product_update(const PointedPlausibilityModel& m,
                                                          const PlausibilityActionModel& a,
                                                          std::size_t action) {
  PlausibilityProduct p = pl_product(m.model, a);
  const std::size_t idx = p.index[m.point][action];
  if (idx == PlausibilityProduct::npos) return std::nullopt;
  return PointedPlausibilityModel{std::move(p.model), idx};
}

// ---------------------------------------------------------------------------
// Enumeration

void for_each_plausibility_model(const Signature& sig, std::size_t max_states, unsigned num_ranks,
                                 const std::function<bool(const PlausibilityModel&)>& fn) {
  const std::size_t na = sig.agents.size();
  const std::size_t np = sig.atoms.size();
  for (std::size_t n = 1; n <= max_states; ++n) {
    const auto parts = ModelEnumerator::relations(n, ModelClass::S5);
    std::size_t rank_count = 1;
    for (std::size_t i = 0; i < n; ++i) rank_count *= num_ranks;
    const std::size_t val_count = std::size_t{1} << (n * np);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    PlausibilityModel m(sig, names);

    // Per agent: (partition index, rank code); valuation innermost.
    std::vector<std::size_t> part(na, 0), ranks(na, 0);
    auto load_agent = [&](std::size_t a) {
      for (std::size_t s = 0; s < n; ++s) m.set_cell(a, s, parts[part[a]][s]);
      std::size_t code = ranks[a];
      for (std::size_t s = 0; s < n; ++s) {
        m.set_rank(a, s, static_cast<unsigned>(code % num_ranks));
        code /= num_ranks;
      }
    };
    for (std::size_t a = 0; a < na; ++a) load_agent(a);
    auto advance = [&] {
      for (std::size_t a = na; a-- > 0;) {
        if (++ranks[a] < rank_count || (ranks[a] = 0, ++part[a] < parts.size())) {
          load_agent(a);
          return true;
        }
        part[a] = 0;
        load_agent(a);
      }
      return false;
    };
    do {
      for (std::size_t v = 0; v < val_count; ++v) {
        for (std::size_t p = 0; p < np; ++p) {
          StateSet set(n);
          for (std::size_t s = 0; s < n; ++s)
            if ((v >> (p * n + s)) & 1u) set.set(s);
          m.set_valuation(p, std::move(set));
        }
        if (!fn(m)) return;
      }
    } while (advance());
  }
}

}  // namespace lying
