#include "lying/io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "lying/error.hpp"

namespace lying {

namespace {

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw InputError("unknown key '" + key + "' in " + std::string(what));
  }
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key '") + key + "'");
  return *it;
}

std::string as_string(const json& j, std::string_view ctx) {
  if (!j.is_string()) throw InputError("expected a string in " + std::string(ctx));
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, std::string_view ctx) {
  if (!j.is_array()) throw InputError("expected an array of strings for " + std::string(ctx));
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& x : j) {
    out.push_back(as_string(x, ctx));
    if (out.back().empty()) throw InputError("empty name in " + std::string(ctx));
    if (!seen.insert(out.back()).second) throw InputError("duplicate '" + out.back() + "' in " + std::string(ctx));
  }
  return out;
}

std::vector<std::string> optional_list(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? std::vector<std::string>{} : string_list(*it, key);
}

// Reads {"agent": [["s","t"], ...]} and calls add(agent, s, t) with indices.
template <class Lookup, class Add>
void read_relations(const json& rel, const std::vector<std::string>& agents, Lookup&& index, Add&& add,
                    std::string_view key) {
  if (!rel.is_object()) throw InputError("'" + std::string(key) + "' must be an object");
  for (const auto& [agent, pairs] : rel.items()) {
    std::size_t a = agents.size();
    for (std::size_t i = 0; i < agents.size(); ++i)
      if (agents[i] == agent) a = i;
    if (a == agents.size()) throw InputError("'" + std::string(key) + "' names unknown agent '" + agent + "'");
    if (!pairs.is_array()) throw InputError("relation of '" + agent + "' must be an array of pairs");
    for (const auto& p : pairs) {
      if (!p.is_array() || p.size() != 2) throw InputError("relation of '" + agent + "' has a malformed pair");
      add(a, index(as_string(p[0], key)), index(as_string(p[1], key)));
    }
  }
}

json relation_json(const std::vector<std::string>& names,
                   const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  json out = json::array();
  for (auto [s, t] : edges) out.push_back(json::array({names[s], names[t]}));
  return out;
}

std::optional<std::size_t> read_point(const json& j, const auto& model) {
  auto it = j.find("point");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return model.state_index(as_string(*it, "point"));
}

}  // namespace

PointedModel ModelFile::pointed() const {
  if (!point) throw InputError("model has no designated point");
  return PointedModel{model, *point};
}

PointedPlausibilityModel PlausibilityFile::pointed() const {
  if (!point) throw InputError("model has no designated point");
  return PointedPlausibilityModel{model, *point};
}

ModelFile model_from_json(const json& j) {
  check_keys(j, {"agents", "atoms", "states", "val", "rel", "point"}, "model");
  Signature sig{optional_list(j, "agents"), optional_list(j, "atoms")};
  ModelFile out{KripkeModel(sig, string_list(require(j, "states"), "states")), std::nullopt};
  KripkeModel& m = out.model;
  if (auto it = j.find("val"); it != j.end()) {
    if (!it->is_object()) throw InputError("'val' must be an object");
    for (const auto& [atom, states] : it->items()) {
      if (!sig.has_atom(atom)) throw InputError("'val' names undeclared atom '" + atom + "'");
      for (const auto& s : string_list(states, "val")) m.set_true(atom, s);
    }
  }
  if (auto it = j.find("rel"); it != j.end())
    read_relations(
        *it, sig.agents, [&](const std::string& s) { return m.state_index(s); },
        [&](std::size_t a, std::size_t s, std::size_t t) { m.add_edge(a, s, t); }, "rel");
  out.point = read_point(j, m);
  return out;
}

json model_to_json(const KripkeModel& m, std::optional<std::size_t> point) {
  json j;
  j["agents"] = m.agents();
  j["atoms"] = m.atoms();
  j["states"] = m.state_names();
  json val = json::object();
  for (std::size_t p = 0; p < m.atoms().size(); ++p) {
    json states = json::array();
    m.valuation(p).for_each([&](std::size_t s) { states.push_back(m.state_name(s)); });
    val[m.atoms()[p]] = std::move(states);
  }
  j["val"] = std::move(val);
  json rel = json::object();
  for (std::size_t a = 0; a < m.agents().size(); ++a) rel[m.agents()[a]] = relation_json(m.state_names(), m.edges(a));
  j["rel"] = std::move(rel);
  if (point) j["point"] = m.state_name(*point);
  return j;
}

json model_to_json(const PointedModel& m) { return model_to_json(m.model, m.point); }

bool is_plausibility_json(const json& j) { return j.is_object() && j.contains("epi"); }

PlausibilityFile plausibility_from_json(const json& j) {
  check_keys(j, {"agents", "atoms", "states", "val", "epi", "rank", "point"}, "plausibility model");
  Signature sig{optional_list(j, "agents"), optional_list(j, "atoms")};
  PlausibilityFile out{PlausibilityModel(sig, string_list(require(j, "states"), "states")), std::nullopt};
  PlausibilityModel& m = out.model;
  if (auto it = j.find("val"); it != j.end()) {
    if (!it->is_object()) throw InputError("'val' must be an object");
    for (const auto& [atom, states] : it->items()) {
      const std::size_t p = m.atom_index(atom);
      StateSet v(m.num_states());
      for (const auto& s : string_list(states, "val")) v.set(m.state_index(s));
      m.set_valuation(p, std::move(v));
    }
  }
  read_relations(
      require(j, "epi"), sig.agents, [&](const std::string& s) { return m.state_index(s); },
      [&](std::size_t a, std::size_t s, std::size_t t) { m.add_epi_edge(a, s, t); }, "epi");
  if (auto it = j.find("rank"); it != j.end()) {
    if (!it->is_object()) throw InputError("'rank' must be an object");
    for (const auto& [agent, ranks] : it->items()) {
      const std::size_t a = m.agent_index(agent);
      if (!ranks.is_object()) throw InputError("ranks of '" + agent + "' must be an object");
      for (const auto& [state, r] : ranks.items()) {
        if (!r.is_number_unsigned()) throw InputError("rank of '" + state + "' must be a natural number");
        m.set_rank(a, m.state_index(state), r.get<unsigned>());
      }
    }
  }
  m.validate();
  out.point = read_point(j, m);
  return out;
}

json plausibility_to_json(const PlausibilityModel& m, std::optional<std::size_t> point) {
  json j;
  j["agents"] = m.agents();
  j["atoms"] = m.atoms();
  j["states"] = m.state_names();
  json val = json::object();
  for (std::size_t p = 0; p < m.atoms().size(); ++p) {
    json states = json::array();
    m.valuation(p).for_each([&](std::size_t s) { states.push_back(m.state_name(s)); });
    val[m.atoms()[p]] = std::move(states);
  }
  j["val"] = std::move(val);
  json epi = json::object();
  json rank = json::object();
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    json r = json::object();
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      m.cell(a, s).for_each([&](std::size_t t) { edges.emplace_back(s, t); });
      r[m.state_name(s)] = m.rank(a, s);
    }
    epi[m.agents()[a]] = relation_json(m.state_names(), edges);
    rank[m.agents()[a]] = std::move(r);
  }
  j["epi"] = std::move(epi);
  j["rank"] = std::move(rank);
  if (point) j["point"] = m.state_name(*point);
  return j;
}

PointedActionModel action_model_from_json(const json& j) {
  check_keys(j, {"agents", "atoms", "states", "pre", "rel", "point"}, "action model");
  const bool has_atoms = j.contains("atoms");
  Signature sig{optional_list(j, "agents"), optional_list(j, "atoms")};
  ActionModel am(sig.agents, string_list(require(j, "states"), "states"));
  if (auto it = j.find("pre"); it != j.end()) {
    if (!it->is_object()) throw InputError("'pre' must be an object");
    for (const auto& [action, text] : it->items()) {
      const std::string src = as_string(text, "pre");
      am.set_pre(am.action_index(action), has_atoms ? parse(src, sig) : parse(src));
    }
  }
  if (auto it = j.find("rel"); it != j.end())
    read_relations(
        *it, sig.agents, [&](const std::string& s) { return am.action_index(s); },
        [&](std::size_t a, std::size_t s, std::size_t t) { am.add_edge(a, s, t); }, "rel");
  const std::string point = as_string(require(j, "point"), "point");
  return PointedActionModel(std::move(am), point);
}

json action_model_to_json(const PointedActionModel& e) {
  const ActionModel& am = e.model();
  json j;
  j["agents"] = am.agents();
  j["states"] = am.actions();
  json pre = json::object();
  for (std::size_t x = 0; x < am.num_actions(); ++x) pre[am.action_name(x)] = print(am.pre(x));
  j["pre"] = std::move(pre);
  json rel = json::object();
  for (std::size_t a = 0; a < am.agents().size(); ++a) rel[am.agents()[a]] = relation_json(am.actions(), am.edges(a));
  j["rel"] = std::move(rel);
  j["point"] = e.point_name();
  return j;
}

Scenario scenario_from_json(const json& j) {
  check_keys(j, {"bound", "actual", "parity", "steps"}, "scenario");
  Scenario sc;
  if (auto it = j.find("bound"); it != j.end()) {
    if (!it->is_number_unsigned()) throw InputError("'bound' must be a natural number");
    sc.config.bound = it->get<unsigned>();
  }
  if (auto it = j.find("actual"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_unsigned() || !(*it)[1].is_number_unsigned())
      throw InputError("'actual' must be a pair of natural numbers");
    sc.config.actual = {(*it)[0].get<unsigned>(), (*it)[1].get<unsigned>()};
  }
  if (auto it = j.find("parity"); it != j.end()) {
    const std::string p = as_string(*it, "parity");
    if (p == "both") sc.config.parity = Parity::Both;
    else if (p == "actual") sc.config.parity = Parity::ActualOnly;
    else throw InputError("'parity' must be \"actual\" or \"both\"");
  }
  const json& steps = require(j, "steps");
  if (!steps.is_array()) throw InputError("'steps' must be an array");
  for (const auto& s : steps) {
    check_keys(s, {"speaker", "flavor", "utterance"}, "scenario step");
    ScenarioStep step;
    step.speaker = as_string(require(s, "speaker"), "speaker");
    if (step.speaker != "a" && step.speaker != "b") throw InputError("step speaker must be \"a\" or \"b\"");
    step.flavor = as_string(require(s, "flavor"), "flavor");
    if (step.flavor != "truth" && step.flavor != "lie" && step.flavor != "bluff")
      throw InputError("step flavor must be truth, lie or bluff");
    const std::string u = as_string(require(s, "utterance"), "utterance");
    auto parsed = parse_utterance(u);
    if (!parsed) throw InputError("unknown utterance '" + u + "'");
    step.utterance = *parsed;
    sc.steps.push_back(std::move(step));
  }
  return sc;
}

json scenario_result_to_json(const ScenarioResult& r, const RiddleConfig& cfg) {
  json out;
  out["mode"] = std::string(to_string(r.mode));
  out["bound"] = cfg.bound;
  out["actual"] = json::array({cfg.actual.first, cfg.actual.second});
  out["initial"] = model_to_json(r.initial);
  json steps = json::array();
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const StepReport& s = r.steps[i];
    json j;
    j["step"] = s.index;
    j["speaker"] = s.step.speaker;
    j["utterance"] = std::string(to_string(s.step.utterance));
    j["announcement"] = print(s.announcement);
    j["executed"] = s.executed;
    j["classification"] = s.classification ? json(std::string(to_string(*s.classification))) : json(nullptr);
    j["observer"] = s.observer;
    j["detection"] = s.detection ? json(std::string(to_string(*s.detection))) : json(nullptr);
    j["boundary_dependent"] = s.boundary_dependent;
    if (!s.note.empty()) j["note"] = s.note;
    if (s.executed) {
      const PointedModel& m = r.models[i];
      j["states"] = m.model.state_names();
      j["faithful_states"] = faithful_states(m.model, cfg, s.index);
      j["model"] = r.mode == ScenarioMode::Plausible ? plausibility_to_json(r.plausibility[i].model, r.plausibility[i].point)
                                                      : model_to_json(m);
    }
    steps.push_back(std::move(j));
  }
  out["steps"] = std::move(steps);
  out["stopped"] = r.stopped;
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace lying
