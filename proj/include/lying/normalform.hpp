#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lying/formula.hpp"
#include "lying/kripke.hpp"

namespace lying {

struct RewriteStep {
  std::string axiom;
  Formula before;
  Formula after;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

struct Translation {
  Formula formula;
  RewriteTrace trace;
};

/// Rewrites announcement operators away with the reduction axioms, always at
/// an innermost announcement (contents before bodies). Each step pushes one
/// announcement one connective deeper, so the total size of announcement
/// bodies strictly decreases. Belief steps use the action-belief axiom on the
/// builtin action model of the flavor over `sig.agents`, which fixes the
/// observer of skeptical public and the addressee of skeptical agent
/// announcements. Plausible flavors, Knows and conditional belief raise
/// UnsupportedError.
Translation translate(const Formula& f, const Signature& sig);
/// Signature from the formula itself, agents in lexicographic order.
Translation translate(const Formula& f);

/// Agents and atoms of f padded with default names (a, b, c, ... and
/// p, q, r, ...) up to the requested counts.
Signature padded_signature(const Formula& f, std::size_t agents, std::size_t atoms);

/// First countermodel (fewest states, enumeration order) pointed at a state
/// falsifying f, or nothing when f holds everywhere in every model of the
/// class with at most max_states states. Isomorphic copies are skipped.
std::optional<PointedModel> check_validity(const Formula& f, ModelClass cls, std::size_t max_states,
                                           const Signature& sig);

/// check_validity of f <-> g.
bool equivalent_at_bound(const Formula& f, const Formula& g, ModelClass cls, std::size_t max_states,
                         const Signature& sig);

/// Bound used by adf and strictify to confirm their KD45 equivalences.
inline constexpr std::size_t kNormalFormOracleStates = 3;

/// Alternating disjunctive form of an announcement-free, belief-only formula:
/// a disjunction of terms psi0 & (B{b}(psi1 | ...) & ~B{b}~psi1 & ...) & ...
/// with psi0 propositional and every psi_i again an adf without top-level
/// b-modalities. Blocks of `outermost` come first in each term. The result is
/// checked against f over KD45 models; a mismatch or size blowup raises Error.
Formula adf(const Formula& f, const std::string& outermost);

/// Strict version of the announcement of f by the speaker: from the adf of
/// B{a} f = B{a}(psi1 | ...) & ~B{a}~psi1 & ..., returns
/// (psi1 | ...) & ~B{a}~psi1 & .... Raises Error when that adf is a
/// disjunction of several speaker blocks, or when B{a} of the result is not
/// KD45-equivalent to B{a} f at the oracle bound.
Formula strictify(const std::string& speaker, const Formula& f);

/// Simplification by constant folding and the KD45 facts B{a} true = true,
/// B{a} false = false.
Formula simplify_kd45(const Formula& f);

}  // namespace lying
