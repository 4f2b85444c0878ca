#include "lying/kripke.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lying/error.hpp"

namespace lying {

KripkeModel::KripkeModel(Signature sig, std::vector<std::string> states)
    : sig_(std::move(sig)), names_(std::move(states)) {
  const std::size_t n = names_.size();
  std::set<std::string_view> seen;
  for (const auto& s : names_)
    if (!seen.insert(s).second) throw InputError("duplicate state '" + s + "'");
  succ_.assign(sig_.agents.size(), std::vector<StateSet>(n, StateSet(n)));
  val_.assign(sig_.atoms.size(), StateSet(n));
}

std::optional<std::size_t> KripkeModel::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t KripkeModel::state_index(std::string_view name) const {
  if (auto i = find_state(name)) return *i;
  throw InputError("unknown state '" + std::string(name) + "'");
}

std::size_t KripkeModel::agent_index(std::string_view a) const {
  for (std::size_t i = 0; i < sig_.agents.size(); ++i)
    if (sig_.agents[i] == a) return i;
  throw SignatureError("unknown agent '" + std::string(a) + "'");
}

std::size_t KripkeModel::atom_index(std::string_view p) const {
  for (std::size_t i = 0; i < sig_.atoms.size(); ++i)
    if (sig_.atoms[i] == p) return i;
  throw SignatureError("unknown atom '" + std::string(p) + "'");
}

void KripkeModel::set_successors(std::size_t agent, std::size_t s, StateSet succ) {
  succ_[agent][s] = std::move(succ);
}

void KripkeModel::add_edge(std::string_view agent, std::string_view from, std::string_view to) {
  add_edge(agent_index(agent), state_index(from), state_index(to));
}

void KripkeModel::clear_relation(std::size_t agent) {
  for (auto& s : succ_[agent]) s = StateSet(num_states());
}

void KripkeModel::set_valuation(std::size_t atom, StateSet v) { val_[atom] = std::move(v); }

void KripkeModel::set_true(std::string_view atom, std::string_view state) {
  val_[atom_index(atom)].set(state_index(state));
}

std::vector<std::pair<std::size_t, std::size_t>> KripkeModel::edges(std::size_t agent) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < num_states(); ++s)
    succ_[agent][s].for_each([&](std::size_t t) { out.emplace_back(s, t); });
  return out;
}

bool operator==(const KripkeModel& a, const KripkeModel& b) {
  return a.sig_.agents == b.sig_.agents && a.sig_.atoms == b.sig_.atoms && a.names_ == b.names_ &&
         a.succ_ == b.succ_ && a.val_ == b.val_;
}

PointedModel make_pointed(KripkeModel m, std::string_view point) {
  const std::size_t p = m.state_index(point);
  return PointedModel{std::move(m), p};
}

// ---------------------------------------------------------------------------
// Model classes

std::string_view to_string(ModelClass c) {
  switch (c) {
    case ModelClass::K:
      return "K";
    case ModelClass::K45:
      return "K45";
    case ModelClass::KD45:
      return "KD45";
    case ModelClass::S5:
      return "S5";
  }
  return "?";
}

std::optional<ModelClass> parse_model_class(std::string_view s) {
  std::string low(s);
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "k") return ModelClass::K;
  if (low == "k45") return ModelClass::K45;
  if (low == "kd45") return ModelClass::KD45;
  if (low == "s5") return ModelClass::S5;
  return std::nullopt;
}

bool is_serial(const KripkeModel& m, std::size_t agent) {
  for (std::size_t s = 0; s < m.num_states(); ++s)
    if (m.successors(agent, s).empty()) return false;
  return true;
}

bool is_reflexive(const KripkeModel& m, std::size_t agent) {
  for (std::size_t s = 0; s < m.num_states(); ++s)
    if (!m.has_edge(agent, s, s)) return false;
  return true;
}

bool is_symmetric(const KripkeModel& m, std::size_t agent) {
  for (auto [s, t] : m.edges(agent))
    if (!m.has_edge(agent, t, s)) return false;
  return true;
}

// R(s,t) and R(t,u) imply R(s,u): every successor's successors are ours.
bool is_transitive(const KripkeModel& m, std::size_t agent) {
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const StateSet& succ = m.successors(agent, s);
    bool ok = true;
    succ.for_each([&](std::size_t t) { ok = ok && m.successors(agent, t).subset_of(succ); });
    if (!ok) return false;
  }
  return true;
}

// R(s,t) and R(s,u) imply R(t,u): every successor sees all of our successors.
bool is_euclidean(const KripkeModel& m, std::size_t agent) {
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const StateSet& succ = m.successors(agent, s);
    bool ok = true;
    succ.for_each([&](std::size_t t) { ok = ok && succ.subset_of(m.successors(agent, t)); });
    if (!ok) return false;
  }
  return true;
}

bool in_class(const KripkeModel& m, ModelClass c) {
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    switch (c) {
      case ModelClass::K:
        break;
      case ModelClass::K45:
        if (!is_transitive(m, a) || !is_euclidean(m, a)) return false;
        break;
      case ModelClass::KD45:
        if (!is_serial(m, a) || !is_transitive(m, a) || !is_euclidean(m, a)) return false;
        break;
      case ModelClass::S5:
        if (!is_reflexive(m, a) || !is_symmetric(m, a) || !is_transitive(m, a)) return false;
        break;
    }
  }
  return true;
}

std::set<ModelClass> class_of(const KripkeModel& m) {
  std::set<ModelClass> out;
  for (auto c : {ModelClass::K, ModelClass::K45, ModelClass::KD45, ModelClass::S5})
    if (in_class(m, c)) out.insert(c);
  return out;
}

// ---------------------------------------------------------------------------
// Bisimulation

namespace {

// Signature-based partition refinement over the union of both state spaces.
// `succ(agent, s)` and `atoms(s)` describe the union.
template <class Succ, class Label>
std::vector<std::size_t> refine(std::size_t n, std::size_t num_agents, Succ&& succ, Label&& label) {
  std::vector<std::size_t> block(n);
  {
    std::map<std::vector<bool>, std::size_t> ids;
    for (std::size_t s = 0; s < n; ++s) block[s] = ids.try_emplace(label(s), ids.size()).first->second;
  }
  std::size_t num_blocks = 0;
  for (auto b : block) num_blocks = std::max(num_blocks, b + 1);
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> sig{block[s]};
      for (std::size_t a = 0; a < num_agents; ++a) {
        std::vector<bool> seen(num_blocks, false);
        for (std::size_t t : succ(a, s)) seen[block[t]] = true;
        sig.push_back(num_blocks);  // separator
        for (std::size_t b = 0; b < num_blocks; ++b)
          if (seen[b]) sig.push_back(b);
      }
      next[s] = ids.try_emplace(std::move(sig), ids.size()).first->second;
    }
    const std::size_t refined = ids.size();
    block.swap(next);
    if (refined == num_blocks) return block;
    num_blocks = refined;
  }
}

}  // namespace

std::vector<std::size_t> bisimulation_classes(const KripkeModel& m) {
  return refine(
      m.num_states(), m.agents().size(),
      [&](std::size_t a, std::size_t s) { return m.successors(a, s).members(); },
      [&](std::size_t s) {
        std::vector<bool> l;
        for (std::size_t p = 0; p < m.atoms().size(); ++p) l.push_back(m.valuation(p).test(s));
        return l;
      });
}

bool bisimilar(const PointedModel& a, const PointedModel& b) {
  const KripkeModel& x = a.model;
  const KripkeModel& y = b.model;
  if (x.agents() != y.agents() || x.atoms() != y.atoms())
    throw SignatureError("bisimulation check across different signatures");
  const std::size_t nx = x.num_states();
  const auto blocks = refine(
      nx + y.num_states(), x.agents().size(),
      [&](std::size_t ag, std::size_t s) {
        if (s < nx) return x.successors(ag, s).members();
        auto m = y.successors(ag, s - nx).members();
        for (auto& t : m) t += nx;
        return m;
      },
      [&](std::size_t s) {
        std::vector<bool> l;
        for (std::size_t p = 0; p < x.atoms().size(); ++p)
          l.push_back(s < nx ? x.valuation(p).test(s) : y.valuation(p).test(s - nx));
        return l;
      });
  return blocks[a.point] == blocks[nx + b.point];
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const KripkeModel& m, std::optional<std::size_t> point) {
  std::ostringstream os;
  os << "digraph M {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    std::string label = m.state_name(s);
    std::string val;
    for (std::size_t p = 0; p < m.atoms().size(); ++p) {
      if (!m.valuation(p).test(s)) continue;
      if (!val.empty()) val += ',';
      val += m.atoms()[p];
    }
    label += "\\n" + (val.empty() ? std::string("-") : val);
    os << "  \"" << dot_escape(m.state_name(s)) << "\" [shape="
       << (point && *point == s ? "doublecircle" : "circle") << ", label=\"" << label << "\"];\n";
  }
  for (std::size_t a = 0; a < m.agents().size(); ++a)
    for (auto [s, t] : m.edges(a))
      os << "  \"" << dot_escape(m.state_name(s)) << "\" -> \"" << dot_escape(m.state_name(t))
         << "\" [label=\"" << dot_escape(m.agents()[a]) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const PointedModel& m) { return to_dot(m.model, m.point); }

}  // namespace lying
