#pragma once

#include <functional>

namespace devis {

/// Process-wide worker cap for frame-level parallel loops (CLI --jobs).
/// Work items write to disjoint outputs, so results do not depend on it.
void set_worker_count(int jobs);
int worker_count();

/// Runs fn(0..n-1), chunked across at most worker_count() threads.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace devis
