#include <charconv>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lying/action_model.hpp"
#include "lying/enumerate.hpp"
#include "lying/error.hpp"
#include "lying/io.hpp"
#include "lying/normalform.hpp"
#include "lying/scenarios.hpp"
#include "lying/update.hpp"

using namespace lying;

namespace {

constexpr int kFalse = 1;
constexpr int kInputError = 2;

int cmd_check(const std::string& path, const std::string& text) {
  const json j = read_json_file(path);
  bool holds = false;
  if (is_plausibility_json(j)) {
    const PointedPlausibilityModel m = plausibility_from_json(j).pointed();
    holds = eval_pl(m, parse(text, m.model.signature()));
  } else {
    const PointedModel m = model_from_json(j).pointed();
    holds = eval(m, parse(text, m.model.signature()));
  }
  std::cout << (holds ? "true" : "false") << '\n';
  return holds ? 0 : kFalse;
}

int vacuous() {
  std::cout << "vacuous: precondition failed\n";
  return kFalse;
}

int cmd_update(const std::string& path, const std::string& text) {
  const json j = read_json_file(path);
  if (is_plausibility_json(j)) {
    const PointedPlausibilityModel m = plausibility_from_json(j).pointed();
    const Announcement a = parse_announcement(text, m.model.signature());
    if (a.flavor == Flavor::PubTruth) {
      if (!eval_pl(m, a.formula())) return vacuous();
      const PointedPlausibilityModel r = hard_restrict(m, a.formula());
      std::cout << plausibility_to_json(r.model, r.point).dump(2) << '\n';
      return 0;
    }
    if (!is_plausible(a.flavor))
      throw UnsupportedError("'" + print(a) + "' is not defined on plausibility models");
    const auto [am, alpha] = plausible_action(m.model.agents(), a);
    auto r = pl_product_update(m, am, alpha);
    if (!r) return vacuous();
    std::cout << plausibility_to_json(r->model, r->point).dump(2) << '\n';
    return 0;
  }
  const PointedModel m = model_from_json(j).pointed();
  const Announcement a = parse_announcement(text, m.model.signature());
  std::optional<PointedModel> r;
  if (is_skeptical(a.flavor)) {
    r = product_update(m, builtin_action(m.model.agents(), a));
  } else {
    r = announce(m, a);
  }
  if (!r) return vacuous();
  std::cout << model_to_json(*r).dump(2) << '\n';
  return 0;
}

int cmd_translate(const std::string& text, bool trace) {
  const Translation t = translate(parse(text));
  if (trace)
    for (const auto& s : t.trace.steps)
      std::cout << s.axiom << ": " << print(s.before) << "  ==>  " << print(s.after) << '\n';
  std::cout << print(t.formula) << '\n';
  return 0;
}

int cmd_valid(const std::string& text, const std::string& cls_name, std::size_t states, std::size_t agents,
              std::size_t atoms) {
  const auto cls = parse_model_class(cls_name);
  if (!cls) throw InputError("unknown model class '" + cls_name + "'");
  const Formula f = parse(text);
  const auto counter = check_validity(f, *cls, states, padded_signature(f, agents, atoms));
  if (!counter) {
    std::cout << "valid at bound\n";
    return 0;
  }
  std::cout << model_to_json(*counter).dump(2) << '\n';
  return kFalse;
}

int cmd_bisim(const std::string& p1, const std::string& p2) {
  const bool same = bisimilar(model_from_json(read_json_file(p1)).pointed(),
                              model_from_json(read_json_file(p2)).pointed());
  std::cout << (same ? "true" : "false") << '\n';
  return same ? 0 : kFalse;
}

int cmd_dot(const std::string& path) {
  const json j = read_json_file(path);
  if (is_plausibility_json(j)) {
    const PlausibilityFile f = plausibility_from_json(j);
    std::cout << to_dot(belief_model(f.model), f.point);
  } else {
    const ModelFile f = model_from_json(j);
    std::cout << to_dot(f.model, f.point);
  }
  return 0;
}

std::pair<unsigned, unsigned> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  unsigned m = 0, n = 0;
  auto ok = [](std::string_view t, unsigned& v) {
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    return !t.empty() && ec == std::errc() && p == t.data() + t.size();
  };
  if (comma == std::string::npos || !ok(std::string_view(s).substr(0, comma), m) ||
      !ok(std::string_view(s).substr(comma + 1), n))
    throw InputError("--actual expects M,K");
  return {m, n};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for announcements, lies and bluffs"};
  app.require_subcommand(1);

  std::string model_path, model_path2, text, cls = "kd45", actual, script, mode = "direct", parity;
  bool trace = false;
  std::size_t states = 2, agents = 1, atoms = 1;
  std::optional<unsigned> bound;

  auto* check = app.add_subcommand("check", "Evaluate a formula at the point of a model");
  check->add_option("model", model_path)->required();
  check->add_option("formula", text)->required();

  auto* update = app.add_subcommand("update", "Apply an announcement, print the new model");
  update->add_option("model", model_path)->required();
  update->add_option("announcement", text)->required();

  auto* tr = app.add_subcommand("translate", "Rewrite announcements away");
  tr->add_option("formula", text)->required();
  tr->add_flag("--trace", trace, "Print each rewrite step");

  auto* valid = app.add_subcommand("valid", "Bounded validity check");
  valid->add_option("formula", text)->required();
  valid->add_option("--class", cls)->check(CLI::IsMember({"k", "k45", "kd45", "s5"}, CLI::ignore_case));
  valid->add_option("--states", states)->check(CLI::Range(1, 4));
  valid->add_option("--agents", agents);
  valid->add_option("--atoms", atoms);

  auto* bisim = app.add_subcommand("bisim", "Bisimilarity of two pointed models");
  bisim->add_option("model1", model_path)->required();
  bisim->add_option("model2", model_path2)->required();

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  dot->add_option("model", model_path)->required();

  auto* riddle = app.add_subcommand("riddle", "Run a consecutive numbers scenario");
  riddle->add_option("--bound", bound);
  riddle->add_option("--actual", actual, "M,K");
  riddle->add_option("--script", script, "Scenario JSON");
  riddle->add_option("--mode", mode)->check(CLI::IsMember({"restrict", "direct", "skeptical", "plausible"}));
  riddle->add_option("--parity", parity)->check(CLI::IsMember({"actual", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(model_path, text);
    if (*update) return cmd_update(model_path, text);
    if (*tr) return cmd_translate(text, trace);
    if (*valid) return cmd_valid(text, cls, states, agents, atoms);
    if (*bisim) return cmd_bisim(model_path, model_path2);
    if (*dot) return cmd_dot(model_path);
    if (*riddle) {
      Scenario sc = script.empty() ? Scenario{} : scenario_from_json(read_json_file(script));
      if (bound) sc.config.bound = *bound;
      if (!actual.empty()) sc.config.actual = parse_pair(actual);
      if (!parity.empty()) sc.config.parity = parity == "both" ? Parity::Both : Parity::ActualOnly;
      const ScenarioResult r = run_scenario(sc, *parse_scenario_mode(mode));
      std::cout << scenario_result_to_json(r, sc.config).dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
