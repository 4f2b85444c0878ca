#include "lying/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lying/error.hpp"

namespace lying {

namespace {

bool rows_in_class(const std::vector<StateSet>& rows, ModelClass cls) {
  const std::size_t n = rows.size();
  auto transitive = [&] {
    for (std::size_t s = 0; s < n; ++s) {
      bool ok = true;
      rows[s].for_each([&](std::size_t t) { ok = ok && rows[t].subset_of(rows[s]); });
      if (!ok) return false;
    }
    return true;
  };
  auto euclidean = [&] {
    for (std::size_t s = 0; s < n; ++s) {
      bool ok = true;
      rows[s].for_each([&](std::size_t t) { ok = ok && rows[s].subset_of(rows[t]); });
      if (!ok) return false;
    }
    return true;
  };
  auto serial = [&] {
    return std::none_of(rows.begin(), rows.end(), [](const StateSet& r) { return r.empty(); });
  };
  switch (cls) {
    case ModelClass::K:
      return true;
    case ModelClass::K45:
      return transitive() && euclidean();
    case ModelClass::KD45:
      return serial() && transitive() && euclidean();
    case ModelClass::S5:
      for (std::size_t s = 0; s < n; ++s)
        if (!rows[s].test(s)) return false;
      return transitive() && euclidean();
  }
  return false;
}

}  // namespace

std::vector<std::vector<StateSet>> ModelEnumerator::relations(std::size_t n, ModelClass cls) {
  if (n * n > 20) throw Error("relation enumeration over " + std::to_string(n) + " states is out of range");
  std::vector<std::vector<StateSet>> out;
  const std::size_t total = std::size_t{1} << (n * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<StateSet> rows(n, StateSet(n));
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if ((code >> (s * n + t)) & 1u) rows[s].set(t);
    if (rows_in_class(rows, cls)) out.push_back(std::move(rows));
  }
  return out;
}

ModelEnumerator::ModelEnumerator(Signature sig, std::size_t max_states, ModelClass cls, bool dedup,
                                 std::size_t min_states)
    : sig_(std::move(sig)), max_states_(max_states), cls_(cls), dedup_(dedup) {
  if (min_states == 0) throw Error("models need at least one state");
  n_ = min_states - 1;
}

void ModelEnumerator::start_size(std::size_t n) {
  n_ = n;
  rels_ = relations(n, cls_);
  rel_idx_.assign(sig_.agents.size(), 0);
  val_idx_ = 0;
  const std::size_t bits = n * sig_.atoms.size();
  if (bits >= 63) throw Error("valuation enumeration out of range");
  val_count_ = std::size_t{1} << bits;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  model_ = KripkeModel(sig_, std::move(names));
  for (std::size_t a = 0; a < sig_.agents.size(); ++a) load_relation(a);
  load_valuation();
  perms_.clear();
  if (dedup_) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) perms_.push_back(p);
  }
  fresh_ = true;
}

void ModelEnumerator::load_relation(std::size_t agent) {
  const auto& rows = rels_[rel_idx_[agent]];
  for (std::size_t s = 0; s < n_; ++s) model_.set_successors(agent, s, rows[s]);
}

void ModelEnumerator::load_valuation() {
  const std::size_t k = sig_.atoms.size();
  for (std::size_t p = 0; p < k; ++p) {
    StateSet v(n_);
    for (std::size_t s = 0; s < n_; ++s)
      if ((val_idx_ >> (p * n_ + s)) & 1u) v.set(s);
    model_.set_valuation(p, std::move(v));
  }
}

// Odometer: valuation is the fastest digit, then agents from last to first.
bool ModelEnumerator::advance() {
  if (++val_idx_ < val_count_) {
    load_valuation();
    return true;
  }
  val_idx_ = 0;
  load_valuation();
  for (std::size_t a = sig_.agents.size(); a-- > 0;) {
    if (++rel_idx_[a] < rels_.size()) {
      load_relation(a);
      return true;
    }
    rel_idx_[a] = 0;
    load_relation(a);
  }
  return false;
}

bool ModelEnumerator::canonical() const {
  // Compares the encoding under each permutation with the identity encoding,
  // relation bits agent by agent, then valuation bits.
  const std::size_t n = n_;
  for (const auto& p : perms_) {
    int cmp = 0;
    for (std::size_t a = 0; a < sig_.agents.size() && cmp == 0; ++a)
      for (std::size_t i = 0; i < n && cmp == 0; ++i)
        for (std::size_t j = 0; j < n && cmp == 0; ++j) {
          const bool id = model_.has_edge(a, i, j);
          const bool pm = model_.has_edge(a, p[i], p[j]);
          if (id != pm) cmp = pm ? -1 : 1;
        }
    for (std::size_t q = 0; q < sig_.atoms.size() && cmp == 0; ++q)
      for (std::size_t i = 0; i < n && cmp == 0; ++i) {
        const bool id = model_.valuation(q).test(i);
        const bool pm = model_.valuation(q).test(p[i]);
        if (id != pm) cmp = pm ? -1 : 1;
      }
    if (cmp > 0) return false;
  }
  return true;
}

bool ModelEnumerator::next() {
  for (;;) {
    bool have;
    if (fresh_) {
      fresh_ = false;
      have = !rels_.empty() || sig_.agents.empty();
    } else if (n_ == 0 || rels_.empty()) {
      have = false;
    } else {
      have = advance();
    }
    if (!have) {
      if (n_ >= max_states_) return false;
      start_size(n_ + 1);
      continue;
    }
    if (dedup_ && !canonical()) continue;
    ++produced_;
    return true;
  }
}

std::size_t count_models(const Signature& sig, std::size_t max_states, ModelClass cls, bool dedup) {
  ModelEnumerator e(sig, max_states, cls, dedup);
  while (e.next()) {
  }
  return e.produced();
}

void for_each_model(const Signature& sig, std::size_t max_states, ModelClass cls,
                    const std::function<bool(const KripkeModel&)>& fn, bool dedup) {
  for (ModelEnumerator e(sig, max_states, cls, dedup); e.next();)
    if (!fn(e.model())) return;
}

}  // namespace lying
