#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace lying {

/// Fixed-universe bitset over state indices [0, size). Models up to 64 states
/// stay inline.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t size, bool full = false)
      : size_(size), words_((size + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    if (full) trim();
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool all() const { return count() == size_; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool subset_of(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  StateSet& operator&=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet operator~() const {
    StateSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  /// Calls f(i) for every member in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int bit = std::countr_zero(w);
        f(wi * 64 + static_cast<std::size_t>(bit));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  void trim() {
    if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  boost::container::small_vector<std::uint64_t, 1> words_;
};

}  // namespace lying
