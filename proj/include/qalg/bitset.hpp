#pragma once

// Small bit-set containers used throughout: a fixed-capacity set of atom
// indices and a dynamic set of atom triples.

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace qalg {

/// Set of atom indices with a fixed capacity of 256. Every algebra in scope
/// stays well below that (the largest built-in generator emits 139 atoms).
class AtomSet {
public:
  static constexpr int kCapacity = 256;
  static constexpr int kWords = kCapacity / 64;

  constexpr AtomSet() = default;

  static AtomSet single(int i) {
    AtomSet s;
    s.set(i);
    return s;
  }

  static AtomSet first_n(int n) {
    AtomSet s;
    for (int i = 0; i < n; ++i) s.set(i);
    return s;
  }

  void set(int i) {
    assert(i >= 0 && i < kCapacity);
    w_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    assert(i >= 0 && i < kCapacity);
    w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool test(int i) const {
    assert(i >= 0 && i < kCapacity);
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  bool any() const { return !empty(); }

  int count() const {
    int n = 0;
    for (auto w : w_) n += std::popcount(w);
    return n;
  }

  /// Lowest member, or -1 when empty.
  int first() const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
    return -1;
  }

  /// Lowest member greater than i, or -1.
  int next(int i) const {
    ++i;
    if (i >= kCapacity) return -1;
    int k = i >> 6;
    std::uint64_t w = w_[k] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (w) return k * 64 + std::countr_zero(w);
      if (++k >= kWords) return -1;
      w = w_[k];
    }
  }

  bool subset_of(const AtomSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  bool intersects(const AtomSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  AtomSet& operator|=(const AtomSet& o) {
    for (int k = 0; k < kWords; ++k) w_[k] |= o.w_[k];
    return *this;
  }
  AtomSet& operator&=(const AtomSet& o) {
    for (int k = 0; k < kWords; ++k) w_[k] &= o.w_[k];
    return *this;
  }
  /// Set difference.
  AtomSet& operator-=(const AtomSet& o) {
    for (int k = 0; k < kWords; ++k) w_[k] &= ~o.w_[k];
    return *this;
  }

  friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
  friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
  friend AtomSet operator-(AtomSet a, const AtomSet& b) { return a -= b; }

  friend bool operator==(const AtomSet&, const AtomSet&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (int i = first(); i >= 0; i = next(i)) f(i);
  }

private:
  std::array<std::uint64_t, kWords> w_{};
};

/// Dynamic bit matrix over ordered atom triples (a,b,c) of one structure.
class TripleSet {
public:
  TripleSet() = default;
  explicit TripleSet(int atom_count)
      : n_(atom_count),
        bits_((static_cast<std::size_t>(n_) * n_ * n_ + 63) / 64, 0) {}

  int atom_count() const { return n_; }

  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  void set(int a, int b, int c) {
    auto i = index(a, b, c);
    bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int a, int b, int c) {
    auto i = index(a, b, c);
    bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool test(int a, int b, int c) const {
    auto i = index(a, b, c);
    return (bits_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : bits_) n += std::popcount(w);
    return n;
  }

  /// True when every bit of this set is also set in `o`.
  bool subset_of(const TripleSet& o) const {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if (bits_[k] & ~o.bits_[k]) return false;
    return true;
  }

  friend bool operator==(const TripleSet&, const TripleSet&) = default;

private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace qalg
