#pragma once

#include <cstddef>
#include <functional>

namespace tubal {

/// Number of worker threads used by parallel_for: hardware concurrency,
/// optionally capped by the TUBAL_THREADS environment variable.
std::size_t thread_budget();

/// Runs fn(0) .. fn(count-1) across the thread budget. Falls back to a plain
/// loop when the budget is 1, count is small, or when already inside another
/// parallel_for (no nested pools). Callers must write to disjoint state per
/// index; iteration order is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tubal
