#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lying/kripke.hpp"

namespace lying {

/// Exhaustive generator of every model in a class with 1..max_states states
/// (states named s0, s1, ...). The current model is mutated in place, so a
/// reference from model() is only valid until the next call to next().
///
///   for (ModelEnumerator e(sig, 3, ModelClass::K); e.next();) use(e.model());
///
/// With dedup, only one representative per isomorphism class is produced:
/// the one whose encoding is lexicographically least over all state
/// permutations.
class ModelEnumerator {
 public:
  ModelEnumerator(Signature sig, std::size_t max_states, ModelClass cls, bool dedup = false,
                  std::size_t min_states = 1);

  bool next();
  const KripkeModel& model() const { return model_; }
  std::size_t produced() const { return produced_; }

  /// Relations (as successor rows) of one agent on n states that satisfy the
  /// frame conditions of the class.
  static std::vector<std::vector<StateSet>> relations(std::size_t n, ModelClass cls);

 private:
  void start_size(std::size_t n);
  bool advance();
  void load_relation(std::size_t agent);
  void load_valuation();
  bool canonical() const;

  Signature sig_;
  std::size_t max_states_;
  ModelClass cls_;
  bool dedup_;
  std::size_t n_ = 0;
  bool fresh_ = false;
  std::size_t produced_ = 0;
  std::vector<std::vector<StateSet>> rels_;
  std::vector<std::size_t> rel_idx_;  // per agent
  std::size_t val_idx_ = 0;
  std::size_t val_count_ = 0;
  std::vector<std::vector<std::size_t>> perms_;
  KripkeModel model_;
};

std::size_t count_models(const Signature& sig, std::size_t max_states, ModelClass cls, bool dedup = false);

/// Calls fn on every enumerated model; stops early when fn returns false.
void for_each_model(const Signature& sig, std::size_t max_states, ModelClass cls,
                    const std::function<bool(const KripkeModel&)>& fn, bool dedup = false);

}  // namespace lying
