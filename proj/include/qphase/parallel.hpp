#pragma once

#include <functional>

namespace qphase {

/// Worker count for row-parallel loops. Reads QPHASE_THREADS once per process;
/// 0 or unset means one worker per hardware thread. Always at least 1.
int thread_count();

/// Runs fn(begin, end) over a partition of [0, n) on up to thread_count()
/// threads. Chunk boundaries depend only on n and the worker count, and
/// callers write disjoint output ranges, so results do not depend on
/// scheduling order.
void parallel_for_rows(int n, const std::function<void(int, int)>& fn);

}  // namespace qphase
