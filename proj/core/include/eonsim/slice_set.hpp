#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eonsim {

// Maximal contiguous run of present slices.
struct Fragment {
  uint32_t start = 0;
  uint32_t length = 0;
  friend bool operator==(const Fragment&, const Fragment&) = default;
};

// Concrete assignment of `length` contiguous slices starting at `start`.
struct Slot {
  uint32_t start = 0;
  uint32_t length = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

// Set of slice indices over a fixed universe [0, universe).
// Stored as a bit vector, one bit per slice; bits beyond the universe are
// kept zero so that equality is plain member comparison.
class SliceSet {
public:
  SliceSet() = default;
  explicit SliceSet(uint32_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static SliceSet full(uint32_t universe) {
    SliceSet s(universe);
    if (universe > 0) {
      for (auto& w : s.words_) w = ~uint64_t{0};
      s.mask_tail();
    }
    return s;
  }

  static SliceSet of(uint32_t universe, std::initializer_list<uint32_t> slices) {
    SliceSet s(universe);
    for (uint32_t i : slices) s.insert(i);
    return s;
  }

  uint32_t universe() const { return universe_; }

  bool contains(uint32_t i) const {
    assert(i < universe_);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void insert(uint32_t i) {
    assert(i < universe_);
    words_[i >> 6] |= uint64_t{1} << (i & 63);
  }

  void erase(uint32_t i) {
    assert(i < universe_);
    words_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }

  uint32_t count() const {
    uint32_t n = 0;
    for (uint64_t w : words_) n += static_cast<uint32_t>(std::popcount(w));
    return n;
  }

  bool empty() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  friend bool operator==(const SliceSet&, const SliceSet&) = default;

  void intersect_with(const SliceSet& other) {
    assert(universe_ == other.universe_);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  }

  // Overwrites this set with a & b without reallocating when capacity allows.
  void assign_intersection(const SliceSet& a, const SliceSet& b) {
    assert(a.universe_ == b.universe_);
    universe_ = a.universe_;
    words_.resize(a.words_.size());
    for (size_t i = 0; i < words_.size(); ++i)
      words_[i] = a.words_[i] & b.words_[i];
  }

  bool is_superset_of(const SliceSet& other) const {
    assert(universe_ == other.universe_);
    for (size_t i = 0; i < words_.size(); ++i)
      if (other.words_[i] & ~words_[i]) return false;
    return true;
  }

  // Calls fn(Fragment) for each maximal run of present slices, ascending.
  template <typename F>
  void for_each_fragment(F&& fn) const {
    const uint32_t nw = static_cast<uint32_t>(words_.size());
    uint32_t i = 0;
    for (;;) {
      uint32_t w = i >> 6;
      while (w < nw) {
        uint64_t cur = words_[w] & (~uint64_t{0} << (i & 63));
        if (cur) {
          i = (w << 6) + static_cast<uint32_t>(std::countr_zero(cur));
          break;
        }
        ++w;
        i = w << 6;
      }
      if (w >= nw) return;
      const uint32_t start = i;
      w = i >> 6;
      while (w < nw) {
        uint64_t inv = ~words_[w] & (~uint64_t{0} << (i & 63));
        if (inv) {
          i = (w << 6) + static_cast<uint32_t>(std::countr_zero(inv));
          break;
        }
        ++w;
        i = w << 6;
      }
      // Tail bits are zero, so a run never extends past the universe.
      fn(Fragment{start, i - start});
      if (i >= universe_) return;
    }
  }

  std::vector<Fragment> fragments() const {
    std::vector<Fragment> out;
    for_each_fragment([&](Fragment f) { out.push_back(f); });
    return out;
  }

  // True iff some fragment has length >= n.
  bool supports(uint32_t n) const {
    if (n == 0) return true;
    bool ok = false;
    for_each_fragment([&](Fragment f) { ok |= f.length >= n; });
    return ok;
  }

  // Drops every fragment shorter than n. Clearing happens behind the scan
  // cursor, so a single forward pass suffices.
  void trim(uint32_t n) {
    if (n <= 1) return;
    for_each_fragment([&](Fragment f) {
      if (f.length < n) clear_range(f.start, f.length);
    });
  }

  SliceSet trimmed(uint32_t n) const {
    SliceSet s = *this;
    s.trim(n);
    return s;
  }

  bool contains_all(Slot slot) const {
    return range_all_set(slot.start, slot.length);
  }

  bool disjoint_with(Slot slot) const {
    return range_none_set(slot.start, slot.length);
  }

  // Removes an allocated slot. The slot must be entirely present;
  // anything else is an allocation bookkeeping bug.
  void subtract(Slot slot);
  // Restores a released slot. The slot must be entirely absent.
  void add(Slot slot);

  std::vector<uint32_t> members() const {
    std::vector<uint32_t> out;
    for_each_fragment([&](Fragment f) {
      for (uint32_t i = 0; i < f.length; ++i) out.push_back(f.start + i);
    });
    return out;
  }

  // Comma-separated inclusive ranges, e.g. "1-2,5,7-9"; "-" for the empty set.
  std::string to_string() const;
  static SliceSet parse(std::string_view text, uint32_t universe);

private:
  void mask_tail() {
    const uint32_t rem = universe_ & 63;
    if (rem && !words_.empty()) words_.back() &= (~uint64_t{0} >> (64 - rem));
  }
  void set_range(uint32_t start, uint32_t len);
  void clear_range(uint32_t start, uint32_t len);
  bool range_all_set(uint32_t start, uint32_t len) const;
  bool range_none_set(uint32_t start, uint32_t len) const;

  uint32_t universe_ = 0;
  std::vector<uint64_t> words_;
};

inline SliceSet intersect(const SliceSet& a, const SliceSet& b) {
  SliceSet out;
  out.assign_intersection(a, b);
  return out;
}

inline bool is_superset(const SliceSet& a, const SliceSet& b) {
  return a.is_superset_of(b);
}

// Three-way comparison of the ascending member sequences: negative when a
// precedes b lexicographically, 0 when equal.
int compare_lex(const SliceSet& a, const SliceSet& b);

}  // namespace eonsim
