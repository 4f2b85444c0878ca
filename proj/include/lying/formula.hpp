#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lying {

class PointedActionModel;

/// Agents and atoms a formula or model is allowed to mention.
struct Signature {
  std::vector<std::string> agents;
  std::vector<std::string> atoms;

  bool has_agent(std::string_view a) const;
  bool has_atom(std::string_view p) const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class Op {
  Atom,
  Top,
  Bot,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Believes,
  CondBelieves,
  Knows,
  Dyn,
};

/// Every announcement modality of the language. Public flavors carry no
/// speaker; agent flavors (Ag*, SkAg*, PlAg*) do.
enum class Flavor {
  PubTruth,
  PubLie,
  AgTruth,
  AgLie,
  AgBluff,
  SkPubTruth,
  SkPubLie,
  SkPubReject,
  SkAgTruth,
  SkAgLie,
  SkAgBluff,
  SkAgTruthRejected,
  SkAgLieRejected,
  SkAgBluffRejected,
  PlPubTruth,
  PlPubLie,
  PlAgTruth,
  PlAgLie,
  PlAgBluff,
  GenericAction,
};

bool is_agent_flavor(Flavor f);
bool is_skeptical(Flavor f);
bool is_plausible(Flavor f);
/// Surface keyword, e.g. "lie_sk" for both SkPubLie and SkAgLie.
std::string_view flavor_keyword(Flavor f);

struct Announcement;

/// Immutable formula handle. Copies share structure; equality is structural.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula believes(std::string agent, Formula f);
  static Formula cond_believes(std::string agent, Formula condition, Formula f);
  static Formula knows(std::string agent, Formula f);
  static Formula dyn(Announcement a, Formula f);

  /// Left-folded conjunction/disjunction; empty gives Top/Bot.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Op op() const;
  /// Atom name, or the agent of a modal operator.
  const std::string& name() const;
  /// Sole operand of Not/Believes/Knows/Dyn; left operand of binaries;
  /// condition of CondBelieves.
  const Formula& lhs() const;
  /// Right operand of binaries; body of CondBelieves.
  const Formula& rhs() const;
  /// The modal body: operand of Believes/Knows/Dyn, rhs of CondBelieves.
  const Formula& body() const;
  const Announcement& announcement() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  /// Node identity, for memoization keyed on shared structure.
  const void* id() const { return node_.get(); }
  /// Structural hash, consistent with ==.
  std::size_t hash() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<const Node> share(Node n);
  std::shared_ptr<const Node> node_;
};

struct Announcement {
  Flavor flavor = Flavor::PubTruth;
  std::string speaker;  // empty for public flavors
  std::optional<Formula> content;  // empty only for GenericAction
  std::shared_ptr<const PointedActionModel> action;  // GenericAction only

  static Announcement make(Flavor f, Formula content);
  static Announcement make(Flavor f, std::string speaker, Formula content);
  static Announcement generic(PointedActionModel am);

  const Formula& formula() const;

  friend bool operator==(const Announcement& a, const Announcement& b);
};

std::size_t hash_value(const Announcement& a);

/// Parses the ASCII surface syntax. With a signature, unknown agents or atoms
/// raise SignatureError.
Formula parse(std::string_view text);
Formula parse(std::string_view text, const Signature& sig);
/// Parses a bare announcement such as "lie{a} p" (the text between brackets).
Announcement parse_announcement(std::string_view text);
Announcement parse_announcement(std::string_view text, const Signature& sig);

std::string print(const Formula& f);
std::string print(const Announcement& a);

/// Nesting depth of B, B{|}, K and announcement operators. An announcement
/// counts one level above the deeper of its content and its body.
std::size_t modal_depth(const Formula& f);

std::size_t size(const Formula& f);
bool is_static(const Formula& f);  // no Dyn anywhere
bool is_boolean(const Formula& f);  // no modal operators at all

void collect_agents(const Formula& f, std::set<std::string>& out);
void collect_atoms(const Formula& f, std::set<std::string>& out);
/// Throws SignatureError on the first undeclared agent or atom.
void check_signature(const Formula& f, const Signature& sig);

/// Rewrites Or/Implies/Iff/Top into the Not/And core (Bot is kept as the
/// core constant; Top becomes ~false).
Formula to_core(const Formula& f);

}  // namespace lying
