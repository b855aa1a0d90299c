#pragma once

#include "eonsim/slice_set.hpp"

namespace eonsim {

// Both allocators require that `sigma` supports `n` contiguous slices and
// throw std::logic_error otherwise; callers decide feasibility first.

// Slot at the start of the lowest-indexed fragment of length >= n.
Slot alloc_first(const SliceSet& sigma, uint32_t n);

// Slot at the start of the shortest fragment of length >= n; ties go to the
// lowest start. Leaves the largest contiguous remainder intact.
Slot alloc_fittest(const SliceSet& sigma, uint32_t n);

}  // namespace eonsim
