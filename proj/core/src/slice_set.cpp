#include "eonsim/slice_set.hpp"

#include <charconv>
#include <stdexcept>

namespace eonsim {

namespace {

// Mask of bits [lo, hi) within one 64-bit word, 0 <= lo <= hi <= 64.
uint64_t word_mask(uint32_t lo, uint32_t hi) {
  if (lo >= hi) return 0;
  uint64_t m = ~uint64_t{0} << lo;
  if (hi < 64) m &= ~uint64_t{0} >> (64 - hi);
  return m;
}

}  // namespace

void SliceSet::set_range(uint32_t start, uint32_t len) {
  uint32_t lo = start, hi = start + len;
  for (uint32_t w = lo >> 6; w <= (hi - 1) >> 6 && len > 0; ++w) {
    uint32_t a = w << 6, b = a + 64;
    words_[w] |= word_mask(lo > a ? lo - a : 0, (hi < b ? hi : b) - a);
  }
}

void SliceSet::clear_range(uint32_t start, uint32_t len) {
  uint32_t lo = start, hi = start + len;
  for (uint32_t w = lo >> 6; w <= (hi - 1) >> 6 && len > 0; ++w) {
    uint32_t a = w << 6, b = a + 64;
    words_[w] &= ~word_mask(lo > a ? lo - a : 0, (hi < b ? hi : b) - a);
  }
}

bool SliceSet::range_all_set(uint32_t start, uint32_t len) const {
  if (len == 0) return true;
  if (start + len > universe_) return false;
  uint32_t lo = start, hi = start + len;
  for (uint32_t w = lo >> 6; w <= (hi - 1) >> 6; ++w) {
    uint32_t a = w << 6, b = a + 64;
    uint64_t m = word_mask(lo > a ? lo - a : 0, (hi < b ? hi : b) - a);
    if ((words_[w] & m) != m) return false;
  }
  return true;
}

bool SliceSet::range_none_set(uint32_t start, uint32_t len) const {
  if (len == 0) return true;
  if (start >= universe_) return true;
  uint32_t lo = start, hi = start + len;
  if (hi > universe_) hi = universe_;
  for (uint32_t w = lo >> 6; w <= (hi - 1) >> 6; ++w) {
    uint32_t a = w << 6, b = a + 64;
    uint64_t m = word_mask(lo > a ? lo - a : 0, (hi < b ? hi : b) - a);
    if (words_[w] & m) return false;
  }
  return true;
}

void SliceSet::subtract(Slot slot) {
  if (!contains_all(slot))
    throw std::logic_error("slice bookkeeping: subtracting a slot that is not fully present");
  clear_range(slot.start, slot.length);
}

void SliceSet::add(Slot slot) {
  if (slot.start + slot.length > universe_)
    throw std::logic_error("slice bookkeeping: slot exceeds the universe");
  if (!disjoint_with(slot))
    throw std::logic_error("slice bookkeeping: adding a slot that overlaps present slices");
  set_range(slot.start, slot.length);
}

std::string SliceSet::to_string() const {
  std::string out;
  for_each_fragment([&](Fragment f) {
    if (!out.empty()) out += ',';
    out += std::to_string(f.start);
    if (f.length > 1) {
      out += '-';
      out += std::to_string(f.start + f.length - 1);
    }
  });
  if (out.empty()) out = "-";
  return out;
}

SliceSet SliceSet::parse(std::string_view text, uint32_t universe) {
  SliceSet s(universe);
  if (text == "-") return s;
  if (text.empty()) throw std::invalid_argument("slice set: empty text");
  size_t pos = 0;
  auto read_number = [&]() -> uint32_t {
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos)
      throw std::invalid_argument("slice set: expected a number in '" + std::string(text) + "'");
    pos = static_cast<size_t>(ptr - text.data());
    return value;
  };
  for (;;) {
    uint32_t lo = read_number();
    uint32_t hi = lo;
    if (pos < text.size() && text[pos] == '-') {
      ++pos;
      hi = read_number();
    }
    if (lo > hi || hi >= universe)
      throw std::invalid_argument("slice set: range out of bounds in '" + std::string(text) + "'");
    s.set_range(lo, hi - lo + 1);
    if (pos == text.size()) break;
    if (text[pos] != ',')
      throw std::invalid_argument("slice set: unexpected character in '" + std::string(text) + "'");
    ++pos;
  }
  return s;
}

int compare_lex(const SliceSet& a, const SliceSet& b) {
  // The member sequences agree below the first differing index k. If the set
  // lacking k has no member past k it is a proper prefix and sorts first;
  // otherwise the set holding k has the smaller member at that position.
  assert(a.universe() == b.universe());
  const std::vector<uint32_t> ma = a.members(), mb = b.members();
  const size_t n = std::min(ma.size(), mb.size());
  for (size_t i = 0; i < n; ++i) {
    if (ma[i] != mb[i]) return ma[i] < mb[i] ? -1 : 1;
  }
  if (ma.size() == mb.size()) return 0;
  return ma.size() < mb.size() ? -1 : 1;
}

}  // namespace eonsim
