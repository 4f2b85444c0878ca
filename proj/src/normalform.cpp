#include "lying/normalform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lying/action_model.hpp"
#include "lying/enumerate.hpp"
#include "lying/error.hpp"

namespace lying {

// ---------------------------------------------------------------------------
// Reduction axioms

namespace {

Formula rebuild(const Formula& f, const Formula& l, const Formula& r) {
  switch (f.op()) {
    case Op::Not:
      return Formula::neg(l);
    case Op::And:
      return Formula::conj(l, r);
    case Op::Or:
      return Formula::disj(l, r);
    case Op::Implies:
      return Formula::implies(l, r);
    case Op::Iff:
      return Formula::iff(l, r);
    default:
      throw Error("rebuild on a non-Boolean node");
  }
}

class Reducer {
 public:
  explicit Reducer(const Signature& sig) : sig_(sig) {}

  // Rewrites the leftmost innermost announcement once; empty when f is static.
  std::optional<Formula> step(const Formula& f, std::string& axiom) const {
    switch (f.op()) {
      case Op::Atom:
      case Op::Top:
      case Op::Bot:
        return std::nullopt;
      case Op::Not:
        if (auto r = step(f.lhs(), axiom)) return Formula::neg(*r);
        return std::nullopt;
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff:
        if (auto r = step(f.lhs(), axiom)) return rebuild(f, *r, f.rhs());
        if (auto r = step(f.rhs(), axiom)) return rebuild(f, f.lhs(), *r);
        return std::nullopt;
      case Op::Believes:
        if (auto r = step(f.body(), axiom)) return Formula::believes(f.name(), *r);
        return std::nullopt;
      case Op::Knows:
      case Op::CondBelieves:
        throw UnsupportedError("translate does not handle '" + print(f) + "'");
      case Op::Dyn:
        break;
    }
    const Announcement& ann = f.announcement();
    if (is_plausible(ann.flavor))
      throw UnsupportedError("no reduction axioms for plausible announcement '" + print(ann) + "'");
    if (ann.content) {
      if (auto r = step(*ann.content, axiom)) {
        Announcement inner = ann;
        inner.content = *r;
        return Formula::dyn(std::move(inner), f.body());
      }
    } else {
      for (const auto& pre : ann.action->model().preconditions())
        if (!is_static(pre))
          throw UnsupportedError("action model preconditions must be announcement-free to translate");
    }
    if (auto r = step(f.body(), axiom)) return Formula::dyn(ann, *r);
    return reduce(ann, f.body(), axiom);
  }

 private:
  Formula reduce(const Announcement& ann, const Formula& body, std::string& axiom) const {
    const PointedActionModel e = builtin_action(sig_.agents, ann);
    const Formula pre = e.model().pre(e.point());
    auto after = [&](const Formula& g) { return Formula::dyn(ann, g); };
    switch (body.op()) {
      case Op::Atom:
      case Op::Top:
      case Op::Bot:
        axiom = "atom";
        return Formula::implies(pre, body);
      case Op::Not:
        axiom = "negation";
        return Formula::implies(pre, Formula::neg(after(body.lhs())));
      case Op::And:
        axiom = "conjunction";
        return Formula::conj(after(body.lhs()), after(body.rhs()));
      case Op::Or:
        axiom = "disjunction";
        return Formula::implies(pre, Formula::disj(after(body.lhs()), after(body.rhs())));
      case Op::Implies:
        axiom = "implication";
        return Formula::implies(after(body.lhs()), after(body.rhs()));
      case Op::Iff:
        axiom = "equivalence";
        return Formula::implies(pre, Formula::iff(after(body.lhs()), after(body.rhs())));
      case Op::Believes: {
        axiom = "belief";
        const std::size_t c = e.model().agent_index(body.name());
        std::vector<Formula> parts;
        e.model().successors(c, e.point()).for_each([&](std::size_t beta) {
          parts.push_back(
              Formula::believes(body.name(), Formula::dyn(sibling_announcement(ann, e, beta), body.body())));
        });
        return Formula::implies(pre, Formula::conj_all(parts));
      }
      default:
        throw UnsupportedError("translate does not handle '" + print(body) + "'");
    }
  }

  const Signature& sig_;
};

}  // namespace

Translation translate(const Formula& f, const Signature& sig) {
  Reducer reducer(sig);
  Translation out{f, {}};
  for (;;) {
    std::string axiom;
    auto next = reducer.step(out.formula, axiom);
    if (!next) return out;
    out.trace.steps.push_back({axiom, out.formula, *next});
    out.formula = *next;
  }
}

Translation translate(const Formula& f) {
  std::set<std::string> agents, atoms;
  collect_agents(f, agents);
  collect_atoms(f, atoms);
  return translate(f, Signature{{agents.begin(), agents.end()}, {atoms.begin(), atoms.end()}});
}

// ---------------------------------------------------------------------------
// Validity at a bound

Signature padded_signature(const Formula& f, std::size_t agents, std::size_t atoms) {
  std::set<std::string> ag, at;
  collect_agents(f, ag);
  collect_atoms(f, at);
  auto pad = [](std::set<std::string>& names, std::size_t want, std::string_view pool) {
    for (char c : pool) {
      if (names.size() >= want) break;
      names.insert(std::string(1, c));
    }
    for (std::size_t i = 0; names.size() < want; ++i) names.insert(std::string(1, pool[0]) + std::to_string(i));
  };
  pad(ag, agents, "abcdefgh");
  pad(at, atoms, "pqrstuvw");
  return Signature{{ag.begin(), ag.end()}, {at.begin(), at.end()}};
}

std::optional<PointedModel> check_validity(const Formula& f, ModelClass cls, std::size_t max_states,
                                           const Signature& sig) {
  check_signature(f, sig);
  const CompiledFormula compiled(f, sig.agents);
  for (ModelEnumerator e(sig, max_states, cls, true); e.next();) {
    const StateSet ext = compiled.extension(e.model());
    if (ext.all()) continue;
    for (std::size_t s = 0; s < ext.size(); ++s)
      if (!ext.test(s)) return PointedModel{e.model(), s};
  }
  return std::nullopt;
}

bool equivalent_at_bound(const Formula& f, const Formula& g, ModelClass cls, std::size_t max_states,
                         const Signature& sig) {
  return !check_validity(Formula::iff(f, g), cls, max_states, sig);
}

// ---------------------------------------------------------------------------
// Alternating disjunctive forms

Formula simplify_kd45(const Formula& f) {
  switch (f.op()) {
    case Op::Not: {
      Formula l = simplify_kd45(f.lhs());
      if (l.op() == Op::Top) return Formula::bot();
      if (l.op() == Op::Bot) return Formula::top();
      if (l.op() == Op::Not) return l.lhs();
      return Formula::neg(l);
    }
    case Op::And: {
      Formula l = simplify_kd45(f.lhs());
      Formula r = simplify_kd45(f.rhs());
      if (l.op() == Op::Bot || r.op() == Op::Bot) return Formula::bot();
      if (l.op() == Op::Top) return r;
      if (r.op() == Op::Top || l == r) return l;
      return Formula::conj(l, r);
    }
    case Op::Or: {
      Formula l = simplify_kd45(f.lhs());
      Formula r = simplify_kd45(f.rhs());
      if (l.op() == Op::Top || r.op() == Op::Top) return Formula::top();
      if (l.op() == Op::Bot) return r;
      if (r.op() == Op::Bot || l == r) return l;
      return Formula::disj(l, r);
    }
    case Op::Implies: {
      Formula l = simplify_kd45(f.lhs());
      Formula r = simplify_kd45(f.rhs());
      if (l.op() == Op::Bot || r.op() == Op::Top || l == r) return Formula::top();
      if (l.op() == Op::Top) return r;
      if (r.op() == Op::Bot) return simplify_kd45(Formula::neg(l));
      return Formula::implies(l, r);
    }
    case Op::Iff: {
      Formula l = simplify_kd45(f.lhs());
      Formula r = simplify_kd45(f.rhs());
      if (l == r) return Formula::top();
      if (l.op() == Op::Top) return r;
      if (r.op() == Op::Top) return l;
      if (l.op() == Op::Bot) return simplify_kd45(Formula::neg(r));
      if (r.op() == Op::Bot) return simplify_kd45(Formula::neg(l));
      return Formula::iff(l, r);
    }
    case Op::Believes: {
      Formula b = simplify_kd45(f.body());
      if (b.op() == Op::Top || b.op() == Op::Bot) return b;
      return Formula::believes(f.name(), b);
    }
    default:
      return f;
  }
}

namespace {

constexpr std::size_t kMaxTerms = 4096;

using Term = std::vector<Formula>;
using Dnf = std::vector<Term>;

bool is_modal_literal(const Formula& l) {
  return l.op() == Op::Believes || (l.op() == Op::Not && l.lhs().op() == Op::Believes);
}

Formula complement(const Formula& l) { return l.op() == Op::Not ? l.lhs() : Formula::neg(l); }

// Dedups literals and drops terms containing a complementary pair.
Dnf clean(Dnf terms) {
  Dnf out;
  for (auto& t : terms) {
    std::map<std::string, Formula> lits;
    for (auto& l : t) lits.emplace(print(l), l);
    bool consistent = true;
    for (const auto& [_, l] : lits) consistent = consistent && !lits.count(print(complement(l)));
    if (!consistent) continue;
    Term u;
    for (auto& [_, l] : lits) u.push_back(l);
    out.push_back(std::move(u));
  }
  if (out.size() > kMaxTerms) throw Error("adf: disjunctive form exceeds " + std::to_string(kMaxTerms) + " terms");
  return out;
}

Dnf product(const Dnf& a, const Dnf& b) {
  if (a.size() * b.size() > kMaxTerms)
    throw Error("adf: disjunctive form exceeds " + std::to_string(kMaxTerms) + " terms");
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Term t = x;
      t.insert(t.end(), y.begin(), y.end());
      out.push_back(std::move(t));
    }
  return clean(std::move(out));
}

Dnf sum(Dnf a, const Dnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return clean(std::move(a));
}

// DNF over literals p, ~p, B{b}x, ~B{b}x of f (negated when `neg`).
Dnf dnf(const Formula& f, bool neg) {
  const Dnf truth{Term{}};
  const Dnf falsity{};
  switch (f.op()) {
    case Op::Atom:
    case Op::Believes:
      return Dnf{Term{neg ? Formula::neg(f) : f}};
    case Op::Top:
      return neg ? falsity : truth;
    case Op::Bot:
      return neg ? truth : falsity;
    case Op::Not:
      return dnf(f.lhs(), !neg);
    case Op::And:
      return neg ? sum(dnf(f.lhs(), true), dnf(f.rhs(), true)) : product(dnf(f.lhs(), false), dnf(f.rhs(), false));
    case Op::Or:
      return neg ? product(dnf(f.lhs(), true), dnf(f.rhs(), true)) : sum(dnf(f.lhs(), false), dnf(f.rhs(), false));
    case Op::Implies:
      return neg ? product(dnf(f.lhs(), false), dnf(f.rhs(), true)) : sum(dnf(f.lhs(), true), dnf(f.rhs(), false));
    case Op::Iff: {
      const Formula& l = f.lhs();
      const Formula& r = f.rhs();
      if (neg) return sum(product(dnf(l, false), dnf(r, true)), product(dnf(l, true), dnf(r, false)));
      return sum(product(dnf(l, false), dnf(r, false)), product(dnf(l, true), dnf(r, true)));
    }
    default:
      throw UnsupportedError("adf needs an announcement-free belief formula, got '" + print(f) + "'");
  }
}

// First B{agent} subformula reachable through Boolean connectives only.
std::optional<Formula> top_level_belief(const Formula& f, const std::string& agent) {
  switch (f.op()) {
    case Op::Believes:
      if (f.name() == agent) return f;
      return std::nullopt;
    case Op::Not:
      return top_level_belief(f.lhs(), agent);
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      if (auto l = top_level_belief(f.lhs(), agent)) return l;
      return top_level_belief(f.rhs(), agent);
    default:
      return std::nullopt;
  }
}

Formula replace_top_level(const Formula& f, const Formula& target, const Formula& with) {
  if (f == target) return with;
  switch (f.op()) {
    case Op::Not:
      return Formula::neg(replace_top_level(f.lhs(), target, with));
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      return rebuild(f, replace_top_level(f.lhs(), target, with), replace_top_level(f.rhs(), target, with));
    default:
      return f;
  }
}

// Removes same-agent nesting: B{b} x with B{b} g at the top of x becomes
// (B{b} g & B{b} x[g:=true]) | (~B{b} g & B{b} x[g:=false]), valid in K45.
Formula flatten(const Formula& f) {
  switch (f.op()) {
    case Op::Not:
      return Formula::neg(flatten(f.lhs()));
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      return rebuild(f, flatten(f.lhs()), flatten(f.rhs()));
    case Op::Believes: {
      const Formula body = simplify_kd45(flatten(f.body()));
      const auto g = top_level_belief(body, f.name());
      if (!g) return Formula::believes(f.name(), body);
      const Formula yes = flatten(Formula::believes(f.name(), replace_top_level(body, *g, Formula::top())));
      const Formula no = flatten(Formula::believes(f.name(), replace_top_level(body, *g, Formula::bot())));
      return Formula::disj(Formula::conj(*g, yes), Formula::conj(Formula::neg(*g), no));
    }
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return f;
    default:
      throw UnsupportedError("adf needs an announcement-free belief formula, got '" + print(f) + "'");
  }
}

Formula adf_raw(const Formula& f, const std::string& outermost) {
  const Formula g = simplify_kd45(flatten(f));
  std::vector<Formula> terms;
  for (const Term& term : dnf(g, false)) {
    std::vector<Formula> prop;
    std::map<std::string, std::pair<std::vector<Formula>, std::vector<Formula>>> blocks;
    for (const Formula& l : term) {
      if (!is_modal_literal(l)) {
        prop.push_back(l);
      } else if (l.op() == Op::Believes) {
        blocks[l.name()].first.push_back(l.body());
      } else {
        blocks[l.lhs().name()].second.push_back(l.lhs().body());
      }
    }
    std::vector<std::string> order;
    if (blocks.count(outermost)) order.push_back(outermost);
    for (const auto& [agent, _] : blocks)
      if (agent != outermost) order.push_back(agent);

    std::vector<Formula> parts{Formula::conj_all(prop)};
    bool satisfiable = true;
    for (const auto& b : order) {
      const auto& [pos, negs] = blocks[b];
      const Formula chi = simplify_kd45(Formula::conj_all(pos));
      std::vector<Formula> psis;
      std::set<std::string> seen;
      auto add = [&](const Formula& psi) {
        Formula p = adf_raw(psi, outermost);
        if (p.op() == Op::Bot) satisfiable = false;
        if (seen.insert(print(p)).second) psis.push_back(p);
      };
      for (const auto& theta : negs) add(Formula::conj(chi, Formula::neg(theta)));
      add(chi);
      if (!satisfiable) break;
      if (psis.size() == 1) {
        if (psis[0].op() != Op::Top) parts.push_back(Formula::believes(b, psis[0]));
        continue;
      }
      parts.push_back(Formula::believes(b, Formula::disj_all(psis)));
      for (const auto& psi : psis) parts.push_back(Formula::neg(Formula::believes(b, Formula::neg(psi))));
    }
    if (satisfiable) terms.push_back(simplify_kd45(Formula::conj_all(parts)));
  }
  return simplify_kd45(Formula::disj_all(terms));
}

Signature signature_of(std::initializer_list<Formula> fs, std::initializer_list<std::string> extra_agents) {
  std::set<std::string> ag(extra_agents.begin(), extra_agents.end()), at;
  for (const auto& f : fs) {
    collect_agents(f, ag);
    collect_atoms(f, at);
  }
  return Signature{{ag.begin(), ag.end()}, {at.begin(), at.end()}};
}

// Conjuncts of a left-folded conjunction.
void conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    conjuncts(f.lhs(), out);
    conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Formula adf(const Formula& f, const std::string& outermost) {
  if (!is_static(f)) throw UnsupportedError("adf needs an announcement-free formula");
  const Formula out = adf_raw(f, outermost);
  const Signature sig = signature_of({f, out}, {});
  if (!equivalent_at_bound(f, out, ModelClass::KD45, kNormalFormOracleStates, sig))
    throw Error("adf: result '" + print(out) + "' is not KD45-equivalent to '" + print(f) + "'");
  return out;
}

Formula strictify(const std::string& speaker, const Formula& f) {
  const Formula believed = Formula::believes(speaker, f);
  const Formula form = adf(believed, speaker);
  if (form.op() == Op::Top || form.op() == Op::Bot) return form;

  std::vector<Formula> parts;
  conjuncts(form, parts);
  // A block without a positive part has B{speaker} true folded away.
  std::vector<Formula> strict;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Formula& p = parts[i];
    if (i == 0 && p.op() == Op::Believes && p.name() == speaker) {
      strict.push_back(p.body());
      continue;
    }
    const bool possibility = p.op() == Op::Not && p.lhs().op() == Op::Believes && p.lhs().name() == speaker;
    if (!possibility) throw Error("strictify: '" + print(form) + "' is not a single " + speaker + "-block");
    strict.push_back(p);
  }
  const Formula out = Formula::conj_all(strict);
  const Signature sig = signature_of({f, out}, {speaker});
  if (!equivalent_at_bound(Formula::believes(speaker, out), believed, ModelClass::KD45, kNormalFormOracleStates, sig))
    throw Error("strictify: B{" + speaker + "} of '" + print(out) + "' is not KD45-equivalent to '" +
                print(believed) + "'");
  return out;
}

}  // namespace lying
