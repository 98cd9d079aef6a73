#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace rct {

// Sum after sorting by value. The multiset of terms is permutation-invariant,
// so configurations that differ only by point order produce bit-identical
// sums; log-density permutation invariance is exact, not approximate.
inline double stable_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

// Parallelism cap: RMT_THREADS if set and positive, else hardware concurrency.
inline int max_threads() {
  if (const char* env = std::getenv("RMT_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace rct
