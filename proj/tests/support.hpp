#pragma once

// Shared fixtures and reference implementations for the test binaries. The
// reference code works state by state from the textbook definitions and does
// not reuse the library's set-based evaluator or update functions.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lying/error.hpp"
#include "lying/formula.hpp"
#include "lying/kripke.hpp"

namespace lying::testing {

inline Formula P(const char* s) { return parse(s); }

/// Formulas over the given agents and atoms, closed under ~ and B{x} up to
/// the requested modal depth, plus one conjunction per level.
inline std::vector<Formula> formula_family(const std::vector<std::string>& agents,
                                           const std::vector<std::string>& atoms, std::size_t depth) {
  std::vector<Formula> level;
  for (const auto& p : atoms) {
    level.push_back(Formula::atom(p));
    level.push_back(Formula::neg(Formula::atom(p)));
  }
  std::vector<Formula> all = level;
  all.push_back(Formula::top());
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Formula> next;
    for (const auto& f : level)
      for (const auto& a : agents) {
        next.push_back(Formula::believes(a, f));
        next.push_back(Formula::neg(Formula::believes(a, f)));
      }
    next.push_back(Formula::conj(level.front(), Formula::believes(agents.front(), level.back())));
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

// Explicit-state model used by the reference evaluator.
struct RefModel {
  std::size_t n = 0;
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> rel;  // [agent]
  std::vector<std::set<std::size_t>> val;                           // [atom]
};

inline RefModel to_ref(const KripkeModel& m) {
  RefModel r;
  r.n = m.num_states();
  r.agents = m.agents();
  r.atoms = m.atoms();
  r.rel.resize(r.agents.size());
  for (std::size_t a = 0; a < r.agents.size(); ++a)
    for (std::size_t s = 0; s < r.n; ++s)
      for (std::size_t t = 0; t < r.n; ++t)
        if (m.has_edge(a, s, t)) r.rel[a].insert({s, t});
  r.val.resize(r.atoms.size());
  for (std::size_t p = 0; p < r.atoms.size(); ++p)
    for (std::size_t s = 0; s < r.n; ++s)
      if (m.valuation(p).test(s)) r.val[p].insert(s);
  return r;
}

inline std::size_t ref_index(const std::vector<std::string>& names, const std::string& x) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == x) return i;
  throw Error("reference: unknown name " + x);
}

inline bool ref_eval(const RefModel& m, std::size_t s, const Formula& f);

// Arrow update: every arrow (u,t) of an agent other than `keep` survives iff
// `target` holds at t in m. With keep empty, all agents are cut.
inline RefModel ref_cut(const RefModel& m, const Formula& target, const std::string& keep) {
  RefModel out = m;
  for (std::size_t a = 0; a < m.agents.size(); ++a) {
    if (m.agents[a] == keep) continue;
    out.rel[a].clear();
    for (auto [u, t] : m.rel[a])
      if (ref_eval(m, t, target)) out.rel[a].insert({u, t});
  }
  return out;
}

inline bool ref_eval(const RefModel& m, std::size_t s, const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      return m.val[ref_index(m.atoms, f.name())].count(s) > 0;
    case Op::Top:
      return true;
    case Op::Bot:
      return false;
    case Op::Not:
      return !ref_eval(m, s, f.lhs());
    case Op::And:
      return ref_eval(m, s, f.lhs()) && ref_eval(m, s, f.rhs());
    case Op::Or:
      return ref_eval(m, s, f.lhs()) || ref_eval(m, s, f.rhs());
    case Op::Implies:
      return !ref_eval(m, s, f.lhs()) || ref_eval(m, s, f.rhs());
    case Op::Iff:
      return ref_eval(m, s, f.lhs()) == ref_eval(m, s, f.rhs());
    case Op::Believes: {
      const std::size_t a = ref_index(m.agents, f.name());
      for (auto [u, t] : m.rel[a])
        if (u == s && !ref_eval(m, t, f.body())) return false;
      return true;
    }
    case Op::Dyn: {
      const Announcement& ann = f.announcement();
      const Formula& phi = ann.formula();
      const std::string& sp = ann.speaker;
      switch (ann.flavor) {
        case Flavor::PubTruth:
          if (!ref_eval(m, s, phi)) return true;
          return ref_eval(ref_cut(m, phi, ""), s, f.body());
        case Flavor::PubLie:
          if (ref_eval(m, s, phi)) return true;
          return ref_eval(ref_cut(m, phi, ""), s, f.body());
        case Flavor::AgTruth:
        case Flavor::AgLie:
        case Flavor::AgBluff: {
          const Formula bphi = Formula::believes(sp, phi);
          const bool t = ref_eval(m, s, bphi);
          const bool l = ref_eval(m, s, Formula::believes(sp, Formula::neg(phi)));
          const bool ok = ann.flavor == Flavor::AgTruth ? t : ann.flavor == Flavor::AgLie ? l : (!t && !l);
          if (!ok) return true;
          return ref_eval(ref_cut(m, bphi, sp), s, f.body());
        }
        default:
          throw Error("reference evaluator: unsupported flavor");
      }
    }
    default:
      throw Error("reference evaluator: unsupported operator");
  }
}

inline bool ref_eval(const PointedModel& m, const Formula& f) { return ref_eval(to_ref(m.model), m.point, f); }

/// Largest bisimulation between two models as a greatest fixpoint over all
/// state pairs.
inline bool ref_bisimilar(const PointedModel& x, const PointedModel& y) {
  const RefModel a = to_ref(x.model), b = to_ref(y.model);
  std::vector<std::vector<bool>> z(a.n, std::vector<bool>(b.n, true));
  for (std::size_t s = 0; s < a.n; ++s)
    for (std::size_t t = 0; t < b.n; ++t)
      for (std::size_t p = 0; p < a.atoms.size(); ++p)
        if ((a.val[p].count(s) > 0) != (b.val[p].count(t) > 0)) z[s][t] = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < a.n; ++s)
      for (std::size_t t = 0; t < b.n; ++t) {
        if (!z[s][t]) continue;
        bool ok = true;
        for (std::size_t ag = 0; ag < a.agents.size() && ok; ++ag) {
          for (auto [u, s2] : a.rel[ag]) {
            if (u != s) continue;
            bool match = false;
            for (auto [v, t2] : b.rel[ag])
              if (v == t && z[s2][t2]) match = true;
            ok = ok && match;
          }
          for (auto [v, t2] : b.rel[ag]) {
            if (v != t) continue;
            bool match = false;
            for (auto [u, s2] : a.rel[ag])
              if (u == s && z[s2][t2]) match = true;
            ok = ok && match;
          }
        }
        if (!ok) {
          z[s][t] = false;
          changed = true;
        }
      }
  }
  return z[x.point][y.point];
}

/// The two-state uncertainty model: b cannot tell s0 (~p) from s1 (p).
inline KripkeModel uncertainty_model(const std::string& agent = "b") {
  KripkeModel m({{agent}, {"p"}}, {"s0", "s1"});
  m.set_true("p", "s1");
  for (auto s : {"s0", "s1"})
    for (auto t : {"s0", "s1"}) m.add_edge(agent, s, t);
  return m;
}

}  // namespace lying::testing
