#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lying/action_model.hpp"
#include "lying/error.hpp"
#include "lying/kripke.hpp"
#include "lying/update.hpp"

namespace lying {

namespace {

enum class Kind : std::uint8_t { Atom, Top, Bot, Not, And, Or, Implies, Iff, Box, DynDirect, DynProduct };

// One node of the shared evaluation graph, evaluated in the model of `ctx`.
// Atom: x is an atom slot. Box: x is the agent. DynDirect: a is the body in
// `child`, b the precondition. DynProduct: a is the body in `child`, x the
// action point.
struct Instr {
  Kind kind;
  std::uint32_t a = 0, b = 0, x = 0;
  std::uint32_t ctx = 0, child = 0;
};

// A model reached by a sequence of announcements. Context 0 is the input.
struct Context {
  std::uint32_t parent = 0;
  bool product = false;
  std::uint32_t targets = 0;  // direct: arrows are cut to these states
  std::optional<std::size_t> keep_agent;
  ActionModel action;
  std::vector<std::uint32_t> pre;  // product: one per action
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};
struct AnnouncementHash {
  std::size_t operator()(const Announcement& a) const { return hash_value(a); }
};
struct ActionModelHash {
  std::size_t operator()(const ActionModel& e) const {
    std::size_t h = e.num_actions();
    for (std::size_t x = 0; x < e.num_actions(); ++x) h = h * 31 + e.pre(x).hash();
    return h;
  }
};

std::size_t index_of(const std::vector<std::string>& agents, const std::string& a) {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i] == a) return i;
  throw SignatureError("unknown agent '" + a + "'");
}

}  // namespace

struct CompiledFormula::Program {
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  std::vector<Instr> code;
  std::vector<Context> contexts;
  std::uint32_t root = 0;
};

namespace {

class Compiler {
 public:
  explicit Compiler(CompiledFormula::Program& p) : p_(p) { p_.contexts.emplace_back(); }

  std::uint32_t compile(const Formula& f, std::uint32_t ctx) {
    auto& memo = memo_[ctx];
    if (auto it = memo.find(f); it != memo.end()) return it->second;
    Instr in{};
    in.ctx = ctx;
    switch (f.op()) {
      case Op::Atom:
        in.kind = Kind::Atom;
        in.x = atom_slot(f.name());
        break;
      case Op::Top:
        in.kind = Kind::Top;
        break;
      case Op::Bot:
        in.kind = Kind::Bot;
        break;
      case Op::Not:
        in.kind = Kind::Not;
        in.a = compile(f.lhs(), ctx);
        break;
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Iff:
        in.kind = f.op() == Op::And ? Kind::And : f.op() == Op::Or ? Kind::Or : f.op() == Op::Implies ? Kind::Implies
                                                                                                   : Kind::Iff;
        in.a = compile(f.lhs(), ctx);
        in.b = compile(f.rhs(), ctx);
        break;
      case Op::Believes:
        in.kind = Kind::Box;
        in.x = static_cast<std::uint32_t>(index_of(p_.agents, f.name()));
        in.a = compile(f.body(), ctx);
        break;
      case Op::CondBelieves:
      case Op::Knows:
        throw UnsupportedError("'" + print(f) + "' is only defined on plausibility models");
      case Op::Dyn:
        dynamic(in, f.announcement(), f.body(), ctx);
        break;
    }
    p_.code.push_back(in);
    const auto id = static_cast<std::uint32_t>(p_.code.size() - 1);
    memo.emplace(f, id);
    return id;
  }

 private:
  void dynamic(Instr& in, const Announcement& a, const Formula& body, std::uint32_t ctx) {
    if (is_plausible(a.flavor))
      throw UnsupportedError("plausible announcement '" + print(a) + "' needs a plausibility model");
    switch (a.flavor) {
      case Flavor::PubTruth:
      case Flavor::PubLie:
      case Flavor::AgTruth:
      case Flavor::AgLie:
      case Flavor::AgBluff: {
        in.kind = Kind::DynDirect;
        in.b = compile(flavor_precondition(p_.agents, a), ctx);
        in.child = direct_context(a, ctx);
        break;
      }
      default: {
        const PointedActionModel e = builtin_action(p_.agents, a);
        in.kind = Kind::DynProduct;
        in.x = static_cast<std::uint32_t>(e.point());
        in.child = product_context(e.model(), ctx);
      }
    }
    in.a = compile(body, in.child);
  }

  std::uint32_t direct_context(const Announcement& a, std::uint32_t parent) {
    auto& known = direct_[parent];
    if (auto it = known.find(a); it != known.end()) return it->second;
    Context c;
    c.parent = parent;
    if (is_agent_flavor(a.flavor)) {
      c.keep_agent = index_of(p_.agents, a.speaker);
      c.targets = compile(Formula::believes(a.speaker, a.formula()), parent);
    } else {
      c.targets = compile(a.formula(), parent);
    }
    return known.emplace(a, add(std::move(c))).first->second;
  }

  std::uint32_t product_context(const ActionModel& e, std::uint32_t parent) {
    auto& known = products_[parent];
    if (auto it = known.find(e); it != known.end()) return it->second;
    Context c;
    c.parent = parent;
    c.product = true;
    c.action = e;
    for (std::size_t x = 0; x < e.num_actions(); ++x) c.pre.push_back(compile(e.pre(x), parent));
    return known.emplace(e, add(std::move(c))).first->second;
  }

  std::uint32_t add(Context c) {
    p_.contexts.push_back(std::move(c));
    return static_cast<std::uint32_t>(p_.contexts.size() - 1);
  }

  std::uint32_t atom_slot(const std::string& name) {
    for (std::size_t i = 0; i < p_.atoms.size(); ++i)
      if (p_.atoms[i] == name) return static_cast<std::uint32_t>(i);
    p_.atoms.push_back(name);
    return static_cast<std::uint32_t>(p_.atoms.size() - 1);
  }

  CompiledFormula::Program& p_;
  std::unordered_map<std::uint32_t, std::unordered_map<Formula, std::uint32_t, FormulaHash>> memo_;
  std::unordered_map<std::uint32_t, std::unordered_map<Announcement, std::uint32_t, AnnouncementHash>> direct_;
  std::unordered_map<std::uint32_t, std::unordered_map<ActionModel, std::uint32_t, ActionModelHash>> products_;
};

// {s : every R_a-successor of s is in target}
StateSet box(const KripkeModel& m, std::size_t agent, const StateSet& target) {
  StateSet out(m.num_states());
  for (std::size_t s = 0; s < m.num_states(); ++s)
    if (m.successors(agent, s).subset_of(target)) out.set(s);
  return out;
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, std::vector<std::string> agents) {
  auto p = std::make_shared<Program>();
  p->agents = std::move(agents);
  Compiler c(*p);
  p->root = c.compile(f, 0);
  prog_ = std::move(p);
}

StateSet CompiledFormula::extension(const KripkeModel& m) const {
  const Program& p = *prog_;
  if (m.agents() != p.agents) throw SignatureError("model agents differ from the compiled formula's");
  std::vector<std::size_t> atom(p.atoms.size());
  for (std::size_t i = 0; i < p.atoms.size(); ++i) atom[i] = m.atom_index(p.atoms[i]);

  struct Live {
    const KripkeModel* model = nullptr;
    std::unique_ptr<KripkeModel> owned;
    std::vector<std::vector<std::size_t>> index;
  };
  std::vector<Live> live(p.contexts.size());
  live[0].model = &m;
  std::vector<StateSet> val(p.code.size());

  // Instructions come in dependency order, so a context's inputs are ready
  // by the time its first instruction runs.
  auto open = [&](std::uint32_t c) -> const KripkeModel& {
    Live& l = live[c];
    if (l.model) return *l.model;
    const Context& cx = p.contexts[c];
    const KripkeModel& parent = *live[cx.parent].model;
    if (cx.product) {
      std::vector<StateSet> pre;
      pre.reserve(cx.pre.size());
      for (auto i : cx.pre) pre.push_back(val[i]);
      Product pr = lying::product(parent, cx.action, pre);
      l.owned = std::make_unique<KripkeModel>(std::move(pr.model));
      l.index = std::move(pr.index);
    } else {
      l.owned = std::make_unique<KripkeModel>(cut_arrows(parent, val[cx.targets], cx.keep_agent));
    }
    l.model = l.owned.get();
    return *l.model;
  };

  for (std::size_t i = 0; i < p.code.size(); ++i) {
    const Instr& in = p.code[i];
    const KripkeModel& k = open(in.ctx);
    const std::size_t n = k.num_states();
    StateSet& out = val[i];
    switch (in.kind) {
      case Kind::Atom:
        out = k.valuation(atom[in.x]);
        break;
      case Kind::Top:
        out = StateSet(n, true);
        break;
      case Kind::Bot:
        out = StateSet(n);
        break;
      case Kind::Not:
        out = ~val[in.a];
        break;
      case Kind::And:
        out = val[in.a] & val[in.b];
        break;
      case Kind::Or:
        out = val[in.a] | val[in.b];
        break;
      case Kind::Implies:
        out = ~val[in.a] | val[in.b];
        break;
      case Kind::Iff: {
        const StateSet& l = val[in.a];
        const StateSet& r = val[in.b];
        out = (l & r) | (~l & ~r);
        break;
      }
      case Kind::Box:
        out = box(k, in.x, val[in.a]);
        break;
      case Kind::DynDirect:
        out = ~val[in.b] | val[in.a];
        break;
      case Kind::DynProduct: {
        const auto& index = live[in.child].index;
        const StateSet& body = val[in.a];
        out = StateSet(n);
        for (std::size_t s = 0; s < n; ++s) {
          const std::size_t j = index[s][in.x];
          if (j == Product::npos || body.test(j)) out.set(s);
        }
        break;
      }
    }
  }
  return std::move(val[p.root]);
}

StateSet extension(const KripkeModel& m, const Formula& f) {
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
      return box(m, m.agent_index(f.name()), extension(m, f.body()));
    case Op::CondBelieves:
    case Op::Knows:
      throw UnsupportedError("'" + print(f) + "' is only defined on plausibility models");
    case Op::Dyn:
      return CompiledFormula(f, m.agents()).extension(m);
  }
  throw Error("unhandled formula node");
}

bool eval(const PointedModel& m, const Formula& f) { return extension(m.model, f).test(m.point); }

}  // namespace lying
