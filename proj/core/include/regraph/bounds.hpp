#pragma once

#include <cstdint>

#include "regraph/graph.hpp"
#include "regraph/rational.hpp"

namespace regraph {

// Theoretical values for a given (n, k).
struct BoundsRecord {
    int n = 0;
    int k = 0;
    std::int64_t moore_at_dmin = 0;  // M_{k, d_min}
    int d_min = 0;
    Rational mpl_min;
};

// Largest vertex count of a k-regular graph with diameter d:
// 1 + k * sum_{i=1..d} (k-1)^(i-1). Reduces to 1 + 2d for k = 2.
// Throws DegreeTooSmallError for k < 2.
std::int64_t moore_bound(int k, int d);

// Smallest attainable diameter of a k-regular graph on n vertices, found by
// integer search for the least d with moore_bound(k, d) >= n (never by
// floating-point logarithm). Requires k >= 3, n >= k+1.
int diameter_lower_bound(int k, std::int64_t n);

// Cerf lower bound on mean path length of a k-regular graph on n vertices,
// as an exact rational. Requires k >= 3, n >= k+1.
Rational mpl_lower_bound(int k, std::int64_t n);

// True iff the graph's MPL equals the lower bound exactly. Requires a
// connected regular graph with k >= 3; throws NotRegularError /
// DisconnectedError / DegreeTooSmallError otherwise.
bool is_generalized_moore(const Graph& g);

// Convenience bundle of the three bounds.
BoundsRecord bounds_record(int k, std::int64_t n);

}  // namespace regraph
