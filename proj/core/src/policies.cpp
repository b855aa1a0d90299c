#include "eonsim/policies.hpp"

#include <stdexcept>

namespace eonsim {
namespace {

[[noreturn]] void unsupported() {
  throw std::logic_error("allocation: slice set does not support the demand");
}

}  // namespace

Slot alloc_first(const SliceSet& sigma, uint32_t n) {
  if (n < 1) unsupported();
  Slot out{0, 0};
  bool found = false;
  sigma.for_each_fragment([&](Fragment f) {
    if (!found && f.length >= n) {
      out = Slot{f.start, n};
      found = true;
    }
  });
  if (!found) unsupported();
  return out;
}

Slot alloc_fittest(const SliceSet& sigma, uint32_t n) {
  if (n < 1) unsupported();
  Slot out{0, 0};
  uint32_t best_len = 0;
  bool found = false;
  sigma.for_each_fragment([&](Fragment f) {
    if (f.length < n) return;
    if (!found || f.length < best_len) {
      out = Slot{f.start, n};
      best_len = f.length;
      found = true;
    }
  });
  if (!found) unsupported();
  return out;
}

}  // namespace eonsim
