#include "lying/scenarios.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "lying/action_model.hpp"
#include "lying/error.hpp"

namespace lying {

std::string riddle_state_name(unsigned m, unsigned n) {
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

std::optional<std::pair<unsigned, unsigned>> parse_riddle_state(std::string_view name) {
  if (name.size() < 5 || name.front() != '(' || name.back() != ')') return std::nullopt;
  const auto comma = name.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto number = [](std::string_view s) -> std::optional<unsigned> {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
  };
  auto m = number(name.substr(1, comma - 1));
  auto n = number(name.substr(comma + 1, name.size() - comma - 2));
  if (!m || !n) return std::nullopt;
  return std::pair{*m, *n};
}

namespace {

struct RiddleFrame {
  Signature sig;
  std::vector<std::pair<unsigned, unsigned>> pairs;
  std::size_t point = 0;
};

RiddleFrame riddle_frame(const RiddleConfig& cfg) {
  const auto [am, bn] = cfg.actual;
  if (am + 1 != bn && bn + 1 != am) throw InputError("actual numbers must be one apart");
  if (std::max(am, bn) > cfg.bound)
    throw InputError("bound " + std::to_string(cfg.bound) + " is below the actual numbers");
  RiddleFrame f;
  f.sig.agents = {"a", "b"};
  for (unsigned i = 0; i <= cfg.bound; ++i) f.sig.atoms.push_back("a" + std::to_string(i));
  for (unsigned i = 0; i <= cfg.bound; ++i) f.sig.atoms.push_back("b" + std::to_string(i));
  for (unsigned m = 0; m <= cfg.bound; ++m) {
    if (cfg.parity == Parity::ActualOnly && m % 2 != am % 2) continue;
    if (m > 0) f.pairs.emplace_back(m, m - 1);
    if (m < cfg.bound) f.pairs.emplace_back(m, m + 1);
  }
  f.point = std::find(f.pairs.begin(), f.pairs.end(), cfg.actual) - f.pairs.begin();
  return f;
}

std::vector<std::string> pair_names(const RiddleFrame& f) {
  std::vector<std::string> names;
  for (auto [m, n] : f.pairs) names.push_back(riddle_state_name(m, n));
  return names;
}

}  // namespace

PointedModel riddle_model(const RiddleConfig& cfg) {
  const RiddleFrame f = riddle_frame(cfg);
  KripkeModel k(f.sig, pair_names(f));
  const std::size_t n = f.pairs.size();
  for (std::size_t s = 0; s < n; ++s) {
    k.set_true("a" + std::to_string(f.pairs[s].first), k.state_name(s));
    k.set_true("b" + std::to_string(f.pairs[s].second), k.state_name(s));
    for (std::size_t t = 0; t < n; ++t) {
      if (f.pairs[s].first == f.pairs[t].first) k.add_edge(0, s, t);
      if (f.pairs[s].second == f.pairs[t].second) k.add_edge(1, s, t);
    }
  }
  return PointedModel{std::move(k), f.point};
}

PointedPlausibilityModel riddle_plausibility_model(const RiddleConfig& cfg) {
  const PointedModel k = riddle_model(cfg);
  PlausibilityModel m(k.model.signature(), k.model.state_names());
  for (std::size_t p = 0; p < k.model.atoms().size(); ++p) m.set_valuation(p, k.model.valuation(p));
  for (std::size_t a = 0; a < k.model.agents().size(); ++a)
    for (std::size_t s = 0; s < k.model.num_states(); ++s) m.set_cell(a, s, k.model.successors(a, s));
  return PointedPlausibilityModel{std::move(m), k.point};
}

std::string_view to_string(Utterance u) {
  switch (u) {
    case Utterance::KnowsNumber:
      return "knows_number";
    case Utterance::NotKnowsNumber:
      return "not_knows_number";
    case Utterance::ThatsALie:
      return "thats_a_lie";
  }
  return "?";
}

std::optional<Utterance> parse_utterance(std::string_view s) {
  for (auto u : {Utterance::KnowsNumber, Utterance::NotKnowsNumber, Utterance::ThatsALie})
    if (to_string(u) == s) return u;
  return std::nullopt;
}

Formula expand_utterance(Utterance u, const std::string& speaker, const RiddleConfig& cfg) {
  if (speaker != "a" && speaker != "b") throw InputError("riddle speakers are 'a' and 'b'");
  if (u == Utterance::ThatsALie) return Formula::believes(speaker, Formula::bot());
  const std::string other = speaker == "a" ? "b" : "a";
  std::vector<Formula> terms;
  for (unsigned i = 0; i <= cfg.bound; ++i) {
    Formula number = Formula::atom(other + std::to_string(i));
    terms.push_back(Formula::conj(number, Formula::believes(speaker, number)));
  }
  Formula knows = Formula::disj_all(terms);
  return u == Utterance::KnowsNumber ? knows : Formula::neg(knows);
}

std::string_view to_string(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::Restrict:
      return "restrict";
    case ScenarioMode::Direct:
      return "direct";
    case ScenarioMode::Skeptical:
      return "skeptical";
    case ScenarioMode::Plausible:
      return "plausible";
  }
  return "?";
}

std::optional<ScenarioMode> parse_scenario_mode(std::string_view s) {
  for (auto m : {ScenarioMode::Restrict, ScenarioMode::Direct, ScenarioMode::Skeptical, ScenarioMode::Plausible})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

bool faithful(const RiddleConfig& cfg, std::pair<unsigned, unsigned> state, std::size_t k) {
  return std::max(state.first, state.second) + k < cfg.bound;
}

std::vector<std::string> faithful_states(const KripkeModel& m, const RiddleConfig& cfg, std::size_t k) {
  std::vector<std::string> out;
  for (const auto& name : m.state_names())
    if (auto p = parse_riddle_state(name); p && faithful(cfg, *p, k)) out.push_back(name);
  return out;
}

namespace {

Flavor step_flavor(const std::string& keyword, ScenarioMode mode, bool rejected) {
  const int i = keyword == "truth" ? 0 : keyword == "lie" ? 1 : keyword == "bluff" ? 2 : -1;
  if (i < 0) throw InputError("unknown step flavor '" + keyword + "' (expected truth, lie or bluff)");
  switch (mode) {
    case ScenarioMode::Restrict:
      if (i != 0) throw InputError("restrict mode only runs truthful steps");
      return Flavor::PubTruth;
    case ScenarioMode::Direct:
      return std::array{Flavor::AgTruth, Flavor::AgLie, Flavor::AgBluff}[i];
    case ScenarioMode::Skeptical:
      return rejected ? std::array{Flavor::SkAgTruthRejected, Flavor::SkAgLieRejected, Flavor::SkAgBluffRejected}[i]
                      : std::array{Flavor::SkAgTruth, Flavor::SkAgLie, Flavor::SkAgBluff}[i];
    case ScenarioMode::Plausible:
      return std::array{Flavor::PlAgTruth, Flavor::PlAgLie, Flavor::PlAgBluff}[i];
  }
  throw Error("unhandled scenario mode");
}

// Undirected neighbourhood of the point up to the given radius.
StateSet neighbourhood(const KripkeModel& m, std::size_t point, std::size_t radius) {
  StateSet seen(m.num_states());
  seen.set(point);
  StateSet frontier = seen;
  for (std::size_t r = 0; r < radius; ++r) {
    StateSet next(m.num_states());
    frontier.for_each([&](std::size_t s) {
      for (std::size_t a = 0; a < m.agents().size(); ++a) next = next | m.successors(a, s);
    });
    for (std::size_t a = 0; a < m.agents().size(); ++a)
      for (std::size_t s = 0; s < m.num_states(); ++s)
        if ((m.successors(a, s) & frontier).count() > 0) next.set(s);
    frontier = next & ~seen;
    seen = seen | next;
  }
  return seen;
}

// Product states back to the names of the states they came from, when every
// state has at most one copy.
KripkeModel rename_product(const Product& p, const KripkeModel& base) {
  std::vector<std::string> names(p.model.num_states());
  for (std::size_t s = 0; s < p.index.size(); ++s) {
    std::size_t copies = 0;
    for (auto idx : p.index[s])
      if (idx != Product::npos) {
        names[idx] = base.state_name(s);
        ++copies;
      }
    if (copies > 1) return p.model;
  }
  KripkeModel out(p.model.signature(), names);
  for (std::size_t a = 0; a < out.agents().size(); ++a)
    for (std::size_t s = 0; s < out.num_states(); ++s) out.set_successors(a, s, p.model.successors(a, s));
  for (std::size_t q = 0; q < out.atoms().size(); ++q) out.set_valuation(q, p.model.valuation(q));
  return out;
}

PlausibilityModel rename_product(const PlausibilityProduct& p, const PlausibilityModel& base) {
  std::vector<std::string> names(p.model.num_states());
  for (std::size_t s = 0; s < p.index.size(); ++s) {
    std::size_t copies = 0;
    for (auto idx : p.index[s])
      if (idx != PlausibilityProduct::npos) {
        names[idx] = base.state_name(s);
        ++copies;
      }
    if (copies > 1) return p.model;
  }
  PlausibilityModel out(p.model.signature(), names);
  for (std::size_t a = 0; a < out.agents().size(); ++a)
    for (std::size_t s = 0; s < out.num_states(); ++s) {
      out.set_cell(a, s, p.model.cell(a, s));
      out.set_rank(a, s, p.model.rank(a, s));
    }
  for (std::size_t q = 0; q < out.atoms().size(); ++q) out.set_valuation(q, p.model.valuation(q));
  return out;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc, ScenarioMode mode) {
  const RiddleConfig& cfg = sc.config;
  ScenarioResult res;
  res.mode = mode;
  res.initial = riddle_model(cfg);
  PointedModel cur = res.initial;
  PointedPlausibilityModel cur_pl;
  if (mode == ScenarioMode::Plausible) cur_pl = riddle_plausibility_model(cfg);
  const std::vector<std::string> agents = cur.model.agents();

  for (std::size_t k = 0; k < sc.steps.size(); ++k) {
    const ScenarioStep& step = sc.steps[k];
    StepReport rep;
    rep.index = k + 1;
    rep.step = step;
    rep.formula = expand_utterance(step.utterance, step.speaker, cfg);
    rep.observer = step.speaker == "a" ? "b" : "a";

    const bool rejected =
        mode == ScenarioMode::Skeptical &&
        eval(cur, Formula::believes(rep.observer, Formula::neg(rep.formula)));
    const Flavor flavor = step_flavor(step.flavor, mode, rejected);
    rep.announcement = mode == ScenarioMode::Restrict ? Announcement::make(flavor, rep.formula)
                                                      : Announcement::make(flavor, step.speaker, rep.formula);

    try {
      rep.classification = classify(cur, step.speaker, rep.formula);
    } catch (const Error& e) {
      rep.note = e.what();
    }
    rep.detection = detect(cur, rep.observer, step.speaker, rep.formula);

    const StateSet near = neighbourhood(cur.model, cur.point, modal_depth(rep.formula));
    near.for_each([&](std::size_t s) {
      auto p = parse_riddle_state(cur.model.state_name(s));
      if (p && !faithful(cfg, *p, k)) rep.boundary_dependent = true;
    });

    std::optional<PointedModel> next;
    switch (mode) {
      case ScenarioMode::Restrict:
        if (eval(cur, rep.formula)) next = restrict(cur, rep.formula);
        break;
      case ScenarioMode::Direct:
        next = announce(cur, rep.announcement);
        break;
      case ScenarioMode::Skeptical: {
        const PointedActionModel e = builtin_action(agents, rep.announcement);
        if (!eval(cur, e.model().pre(e.point()))) break;
        const Product p = product(cur.model, e.model());
        next = PointedModel{rename_product(p, cur.model), p.index[cur.point][e.point()]};
        break;
      }
      case ScenarioMode::Plausible: {
        const auto [am, alpha] = plausible_action(agents, rep.announcement);
        if (!eval_pl(cur_pl, flavor_precondition(agents, rep.announcement))) break;
        const PlausibilityProduct p = pl_product(cur_pl.model, am);
        cur_pl = PointedPlausibilityModel{rename_product(p, cur_pl.model), p.index[cur_pl.point][alpha]};
        res.plausibility.push_back(cur_pl);
        next = PointedModel{belief_model(cur_pl.model), cur_pl.point};
        break;
      }
    }

    if (!next) {
      rep.note = "not executable: announcement was vacuous";
      res.steps.push_back(std::move(rep));
      res.stopped = true;
      break;
    }
    rep.executed = true;
    cur = std::move(*next);
    res.models.push_back(cur);
    res.steps.push_back(std::move(rep));
  }
  return res;
}

}  // namespace lying
