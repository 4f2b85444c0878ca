#include "lying/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "lying/action_model.hpp"
#include "lying/error.hpp"

namespace lying {

bool Signature::has_agent(std::string_view a) const {
  return std::find(agents.begin(), agents.end(), a) != agents.end();
}

bool Signature::has_atom(std::string_view p) const {
  return std::find(atoms.begin(), atoms.end(), p) != atoms.end();
}

struct Formula::Node {
  Op op;
  std::string name;
  std::optional<Formula> lhs, rhs;
  std::optional<Announcement> ann;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::shared_ptr<const Formula::Node> Formula::share(Node n) {
  std::size_t h = mix(static_cast<std::size_t>(n.op), std::hash<std::string>{}(n.name));
  if (n.lhs) h = mix(h, n.lhs->hash());
  if (n.rhs) h = mix(h, n.rhs->hash());
  if (n.ann) h = mix(h, hash_value(*n.ann));
  n.hash = h;
  return std::make_shared<const Node>(std::move(n));
}

std::size_t Formula::hash() const { return node_->hash; }

std::size_t hash_value(const Announcement& a) {
  std::size_t h = mix(static_cast<std::size_t>(a.flavor), std::hash<std::string>{}(a.speaker));
  if (a.content) h = mix(h, a.content->hash());
  if (a.action) h = mix(h, mix(a.action->point(), a.action->model().num_actions()));
  return h;
}

Formula Formula::atom(std::string name) {
  return Formula(share(Node{Op::Atom, std::move(name), {}, {}, {}}));
}
Formula Formula::top() {
  static const Formula t(share(Node{Op::Top, {}, {}, {}, {}}));
  return t;
}
Formula Formula::bot() {
  static const Formula b(share(Node{Op::Bot, {}, {}, {}, {}}));
  return b;
}
Formula Formula::neg(Formula f) {
  return Formula(share(Node{Op::Not, {}, std::move(f), {}, {}}));
}
Formula Formula::conj(Formula l, Formula r) {
  return Formula(share(Node{Op::And, {}, std::move(l), std::move(r), {}}));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(share(Node{Op::Or, {}, std::move(l), std::move(r), {}}));
}
Formula Formula::implies(Formula l, Formula r) {
  return Formula(
      share(Node{Op::Implies, {}, std::move(l), std::move(r), {}}));
}
Formula Formula::iff(Formula l, Formula r) {
  return Formula(share(Node{Op::Iff, {}, std::move(l), std::move(r), {}}));
}
Formula Formula::believes(std::string agent, Formula f) {
  return Formula(
      share(Node{Op::Believes, std::move(agent), std::move(f), {}, {}}));
}
Formula Formula::cond_believes(std::string agent, Formula condition, Formula f) {
  return Formula(share(
      Node{Op::CondBelieves, std::move(agent), std::move(condition), std::move(f), {}}));
}
Formula Formula::knows(std::string agent, Formula f) {
  return Formula(
      share(Node{Op::Knows, std::move(agent), std::move(f), {}, {}}));
}
Formula Formula::dyn(Announcement a, Formula f) {
  return Formula(share(Node{Op::Dyn, {}, std::move(f), {}, std::move(a)}));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}
Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return *node_->lhs; }
const Formula& Formula::rhs() const { return *node_->rhs; }
const Formula& Formula::body() const {
  return node_->op == Op::CondBelieves ? *node_->rhs : *node_->lhs;
}
const Announcement& Formula::announcement() const { return *node_->ann; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash) return false;
  if (x.op != y.op || x.name != y.name) return false;
  if (x.lhs.has_value() != y.lhs.has_value() || x.rhs.has_value() != y.rhs.has_value())
    return false;
  if (x.lhs && !(*x.lhs == *y.lhs)) return false;
  if (x.rhs && !(*x.rhs == *y.rhs)) return false;
  if (x.ann.has_value() != y.ann.has_value()) return false;
  return !x.ann || *x.ann == *y.ann;
}

// ---------------------------------------------------------------------------
// Announcements

bool is_agent_flavor(Flavor f) {
  switch (f) {
    case Flavor::AgTruth:
    case Flavor::AgLie:
    case Flavor::AgBluff:
    case Flavor::SkAgTruth:
    case Flavor::SkAgLie:
    case Flavor::SkAgBluff:
    case Flavor::SkAgTruthRejected:
    case Flavor::SkAgLieRejected:
    case Flavor::SkAgBluffRejected:
    case Flavor::PlAgTruth:
    case Flavor::PlAgLie:
    case Flavor::PlAgBluff:
      return true;
    default:
      return false;
  }
}

bool is_skeptical(Flavor f) {
  switch (f) {
    case Flavor::SkPubTruth:
    case Flavor::SkPubLie:
    case Flavor::SkPubReject:
    case Flavor::SkAgTruth:
    case Flavor::SkAgLie:
    case Flavor::SkAgBluff:
    case Flavor::SkAgTruthRejected:
    case Flavor::SkAgLieRejected:
    case Flavor::SkAgBluffRejected:
      return true;
    default:
      return false;
  }
}

bool is_plausible(Flavor f) {
  switch (f) {
    case Flavor::PlPubTruth:
    case Flavor::PlPubLie:
    case Flavor::PlAgTruth:
    case Flavor::PlAgLie:
    case Flavor::PlAgBluff:
      return true;
    default:
      return false;
  }
}

std::string_view flavor_keyword(Flavor f) {
  switch (f) {
    case Flavor::PubTruth:
    case Flavor::AgTruth:
      return "truth";
    case Flavor::PubLie:
    case Flavor::AgLie:
      return "lie";
    case Flavor::AgBluff:
      return "bluff";
    case Flavor::SkPubTruth:
    case Flavor::SkAgTruth:
      return "truth_sk";
    case Flavor::SkPubLie:
    case Flavor::SkAgLie:
      return "lie_sk";
    case Flavor::SkPubReject:
      return "rej_sk";
    case Flavor::SkAgBluff:
      return "bluff_sk";
    case Flavor::SkAgTruthRejected:
      return "truth_skr";
    case Flavor::SkAgLieRejected:
      return "lie_skr";
    case Flavor::SkAgBluffRejected:
      return "bluff_skr";
    case Flavor::PlPubTruth:
    case Flavor::PlAgTruth:
      return "truth_pl";
    case Flavor::PlPubLie:
    case Flavor::PlAgLie:
      return "lie_pl";
    case Flavor::PlAgBluff:
      return "bluff_pl";
    case Flavor::GenericAction:
      return "action";
  }
  return "?";
}

Announcement Announcement::make(Flavor f, Formula content) {
  if (is_agent_flavor(f)) throw Error("agent flavor needs a speaker");
  if (f == Flavor::GenericAction) throw Error("use Announcement::generic");
  return Announcement{f, {}, std::move(content), {}};
}

Announcement Announcement::make(Flavor f, std::string speaker, Formula content) {
  if (!is_agent_flavor(f)) throw Error("public flavor takes no speaker");
  if (speaker.empty()) throw Error("empty speaker");
  return Announcement{f, std::move(speaker), std::move(content), {}};
}

Announcement Announcement::generic(PointedActionModel am) {
  return Announcement{Flavor::GenericAction, {}, std::nullopt,
                      std::make_shared<const PointedActionModel>(std::move(am))};
}

const Formula& Announcement::formula() const {
  if (!content) throw Error("generic action announcement has no content formula");
  return *content;
}

bool operator==(const Announcement& a, const Announcement& b) {
  if (a.flavor != b.flavor || a.speaker != b.speaker) return false;
  if (a.content.has_value() != b.content.has_value()) return false;
  if (a.content && !(*a.content == *b.content)) return false;
  if (a.action == b.action) return true;
  if (!a.action || !b.action) return false;
  return *a.action == *b.action;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct FlavorSpelling {
  std::string_view word;
  std::optional<Flavor> pub;
  std::optional<Flavor> agent;
};

constexpr std::array<FlavorSpelling, 13> kFlavors{{
    {"truth", Flavor::PubTruth, Flavor::AgTruth},
    {"lie", Flavor::PubLie, Flavor::AgLie},
    {"bluff", std::nullopt, Flavor::AgBluff},
    {"truth_sk", Flavor::SkPubTruth, Flavor::SkAgTruth},
    {"lie_sk", Flavor::SkPubLie, Flavor::SkAgLie},
    {"rej_sk", Flavor::SkPubReject, std::nullopt},
    {"bluff_sk", std::nullopt, Flavor::SkAgBluff},
    {"truth_skr", std::nullopt, Flavor::SkAgTruthRejected},
    {"lie_skr", std::nullopt, Flavor::SkAgLieRejected},
    {"bluff_skr", std::nullopt, Flavor::SkAgBluffRejected},
    {"truth_pl", Flavor::PlPubTruth, Flavor::PlAgTruth},
    {"lie_pl", Flavor::PlPubLie, Flavor::PlAgLie},
    {"bluff_pl", std::nullopt, Flavor::PlAgBluff},
}};

const FlavorSpelling* find_flavor(std::string_view w) {
  for (const auto& f : kFlavors)
    if (f.word == w) return &f;
  return nullptr;
}

bool is_reserved(std::string_view w) {
  return w == "true" || w == "false" || w == "B" || w == "K" || find_flavor(w) != nullptr;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig) : text_(text), sig_(sig) {}

  Formula parse_all() {
    Formula f = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

  Announcement parse_announcement_all() {
    Announcement a = announcement();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view s) {
    skip_ws();
    return text_.substr(pos_, s.size()) == s;
  }

  bool accept(std::string_view s) {
    if (!peek(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::optional<std::string_view> peek_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return std::nullopt;
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::string ident() {
    auto id = peek_ident();
    if (!id) fail("expected identifier");
    pos_ += id->size();
    return std::string(*id);
  }

  std::string agent() {
    const std::size_t at = (skip_ws(), pos_);
    std::string a = ident();
    if (sig_ && !sig_->has_agent(a)) throw SignatureError("unknown agent '" + a + "' at offset " +
                                                          std::to_string(at));
    return a;
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula f = imp();
    while (accept("<->")) f = Formula::iff(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept("->")) return Formula::implies(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept("|")) f = Formula::disj(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept("&")) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    skip_ws();
    if (accept("~")) return Formula::neg(unary());
    if (accept("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    if (accept("[")) {
      Announcement a = announcement();
      expect("]");
      return Formula::dyn(std::move(a), unary());
    }
    const std::size_t at = pos_;
    auto id = peek_ident();
    if (!id) fail(pos_ >= text_.size() ? "unexpected end of input" : "unexpected character");
    if (*id == "B" || *id == "K") {
      const bool knows = *id == "K";
      pos_ += 1;
      if (text_.substr(pos_, 1) != "{") fail("expected '{' after modal operator");
      ++pos_;
      std::string a = agent();
      if (!knows && accept("|")) {
        Formula cond = formula();
        expect("}");
        return Formula::cond_believes(std::move(a), std::move(cond), unary());
      }
      expect("}");
      return knows ? Formula::knows(std::move(a), unary())
                   : Formula::believes(std::move(a), unary());
    }
    pos_ += id->size();
    if (*id == "true") return Formula::top();
    if (*id == "false") return Formula::bot();
    if (is_reserved(*id)) {
      pos_ = at;
      fail("reserved word '" + std::string(*id) + "' used as atom");
    }
    if (sig_ && !sig_->has_atom(*id))
      throw SignatureError("unknown atom '" + std::string(*id) + "' at offset " +
                           std::to_string(at));
    return Formula::atom(std::string(*id));
  }

  Announcement announcement() {
    skip_ws();
    const std::size_t at = pos_;
    auto id = peek_ident();
    const FlavorSpelling* fl = id ? find_flavor(*id) : nullptr;
    if (!fl) fail("expected announcement flavor");
    pos_ += id->size();
    if (text_.substr(pos_, 1) == "{") {
      ++pos_;
      std::string sp = agent();
      expect("}");
      if (!fl->agent) {
        pos_ = at;
        fail("flavor '" + std::string(fl->word) + "' is public-only");
      }
      return Announcement::make(*fl->agent, std::move(sp), formula());
    }
    if (!fl->pub) {
      pos_ = at;
      fail("flavor '" + std::string(fl->word) + "' requires a speaker");
    }
    return Announcement::make(*fl->pub, formula());
  }

  std::string_view text_;
  const Signature* sig_;
  std::size_t pos_ = 0;
};

// Binding strength: Iff 1, Implies 2, Or 3, And 4, unary 5.
int level(const Formula& f) {
  switch (f.op()) {
    case Op::Iff:
      return 1;
    case Op::Implies:
      return 2;
    case Op::Or:
      return 3;
    case Op::And:
      return 4;
    default:
      return 5;
  }
}

void print_to(const Formula& f, std::string& out);

void print_child(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    print_to(f, out);
    out += ')';
  } else {
    print_to(f, out);
  }
}

void print_ann(const Announcement& a, std::string& out) {
  if (a.flavor == Flavor::GenericAction) {
    out += "action ";
    out += a.action->point_name();
    return;
  }
  out += flavor_keyword(a.flavor);
  if (!a.speaker.empty()) {
    out += '{';
    out += a.speaker;
    out += '}';
  }
  out += ' ';
  print_to(*a.content, out);
}

void print_to(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Atom:
      out += f.name();
      return;
    case Op::Top:
      out += "true";
      return;
    case Op::Bot:
      out += "false";
      return;
    case Op::Not:
      out += '~';
      print_child(f.lhs(), 5, out);
      return;
    case Op::And:
      print_child(f.lhs(), 4, out);
      out += " & ";
      print_child(f.rhs(), 5, out);
      return;
    case Op::Or:
      print_child(f.lhs(), 3, out);
      out += " | ";
      print_child(f.rhs(), 4, out);
      return;
    case Op::Implies:
      print_child(f.lhs(), 3, out);
      out += " -> ";
      print_child(f.rhs(), 2, out);
      return;
    case Op::Iff:
      print_child(f.lhs(), 1, out);
      out += " <-> ";
      print_child(f.rhs(), 2, out);
      return;
    case Op::Believes:
      out += "B{" + f.name() + "} ";
      print_child(f.lhs(), 5, out);
      return;
    case Op::Knows:
      out += "K{" + f.name() + "} ";
      print_child(f.lhs(), 5, out);
      return;
    case Op::CondBelieves:
      out += "B{" + f.name() + "|";
      print_to(f.lhs(), out);
      out += "} ";
      print_child(f.rhs(), 5, out);
      return;
    case Op::Dyn:
      out += '[';
      print_ann(f.announcement(), out);
      out += "] ";
      print_child(f.lhs(), 5, out);
      return;
  }
}

template <class F>
void visit_children(const Formula& f, F&& fn) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return;
    case Op::Not:
    case Op::Believes:
    case Op::Knows:
      fn(f.lhs());
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::CondBelieves:
      fn(f.lhs());
      fn(f.rhs());
      return;
    case Op::Dyn: {
      const auto& a = f.announcement();
      if (a.content) fn(*a.content);
      if (a.action)
        for (const auto& pre : a.action->model().preconditions()) fn(pre);
      fn(f.lhs());
      return;
    }
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text, nullptr).parse_all(); }
Formula parse(std::string_view text, const Signature& sig) {
  return Parser(text, &sig).parse_all();
}
Announcement parse_announcement(std::string_view text) {
  return Parser(text, nullptr).parse_announcement_all();
}
Announcement parse_announcement(std::string_view text, const Signature& sig) {
  return Parser(text, &sig).parse_announcement_all();
}

std::string print(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

std::string print(const Announcement& a) {
  std::string out;
  print_ann(a, out);
  return out;
}

std::size_t modal_depth(const Formula& f) {
  std::size_t inner = 0;
  visit_children(f, [&](const Formula& c) { inner = std::max(inner, modal_depth(c)); });
  switch (f.op()) {
    case Op::Believes:
    case Op::CondBelieves:
    case Op::Knows:
    case Op::Dyn:
      return inner + 1;
    default:
      return inner;
  }
}

std::size_t size(const Formula& f) {
  std::size_t n = 1;
  visit_children(f, [&](const Formula& c) { n += size(c); });
  return n;
}

bool is_static(const Formula& f) {
  if (f.op() == Op::Dyn) return false;
  bool ok = true;
  visit_children(f, [&](const Formula& c) { ok = ok && is_static(c); });
  return ok;
}

bool is_boolean(const Formula& f) {
  switch (f.op()) {
    case Op::Believes:
    case Op::CondBelieves:
    case Op::Knows:
    case Op::Dyn:
      return false;
    default:
      break;
  }
  bool ok = true;
  visit_children(f, [&](const Formula& c) { ok = ok && is_boolean(c); });
  return ok;
}

void collect_agents(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Believes:
    case Op::CondBelieves:
    case Op::Knows:
      out.insert(f.name());
      break;
    case Op::Dyn:
      if (!f.announcement().speaker.empty()) out.insert(f.announcement().speaker);
      if (f.announcement().action)
        for (const auto& a : f.announcement().action->model().agents()) out.insert(a);
      break;
    default:
      break;
  }
  visit_children(f, [&](const Formula& c) { collect_agents(c, out); });
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) out.insert(f.name());
  visit_children(f, [&](const Formula& c) { collect_atoms(c, out); });
}

void check_signature(const Formula& f, const Signature& sig) {
  std::set<std::string> agents, atoms;
  collect_agents(f, agents);
  collect_atoms(f, atoms);
  for (const auto& a : agents)
    if (!sig.has_agent(a)) throw SignatureError("unknown agent '" + a + "'");
  for (const auto& p : atoms)
    if (!sig.has_atom(p)) throw SignatureError("unknown atom '" + p + "'");
}

Formula to_core(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      return f;
    case Op::Top:
      return Formula::neg(Formula::bot());
    case Op::Bot:
      return Formula::bot();
    case Op::Not:
      return Formula::neg(to_core(f.lhs()));
    case Op::And:
      return Formula::conj(to_core(f.lhs()), to_core(f.rhs()));
    case Op::Or:
      return Formula::neg(
          Formula::conj(Formula::neg(to_core(f.lhs())), Formula::neg(to_core(f.rhs()))));
    case Op::Implies:
      return Formula::neg(Formula::conj(to_core(f.lhs()), Formula::neg(to_core(f.rhs()))));
    case Op::Iff: {
      Formula l = to_core(f.lhs()), r = to_core(f.rhs());
      return Formula::conj(Formula::neg(Formula::conj(l, Formula::neg(r))),
                           Formula::neg(Formula::conj(r, Formula::neg(l))));
    }
    case Op::Believes:
      return Formula::believes(f.name(), to_core(f.lhs()));
    case Op::Knows:
      return Formula::knows(f.name(), to_core(f.lhs()));
    case Op::CondBelieves:
      return Formula::cond_believes(f.name(), to_core(f.lhs()), to_core(f.rhs()));
    case Op::Dyn: {
      Announcement a = f.announcement();
      if (a.content) a.content = to_core(*a.content);
      return Formula::dyn(std::move(a), to_core(f.lhs()));
    }
  }
  return f;
}

}  // namespace lying
