#include "regraph/bounds.hpp"

#include <string>

#include "regraph/errors.hpp"

namespace regraph {

std::int64_t moore_bound(int k, int d) {
    if (k < 2) throw DegreeTooSmallError("moore_bound requires k >= 2");
    if (d < 1) throw Error("moore_bound requires d >= 1");
    std::int64_t total = 1;
    std::int64_t level = k;  // vertices at distance i; next level branches k-1
    for (int i = 1; i <= d; ++i) {
        total += level;
        level *= k - 1;
    }
    return total;
}

int diameter_lower_bound(int k, std::int64_t n) {
    if (k < 3) throw DegreeTooSmallError("diameter_lower_bound requires k >= 3");
    if (n < k + 1) throw Error("diameter_lower_bound requires n >= k+1");
    int d = 1;
    while (moore_bound(k, d) < n) ++d;
    return d;
}

Rational mpl_lower_bound(int k, std::int64_t n) {
    if (k < 3) throw DegreeTooSmallError("mpl_lower_bound requires k >= 3");
    if (n < k + 1) throw Error("mpl_lower_bound requires n >= k+1");
    const int d = diameter_lower_bound(k, n);
    // k * sum_{i=1..d} (k-1)^(i-1) * i: total distance of a full Moore tree.
    std::int64_t weighted = 0;
    std::int64_t level = k;
    for (int i = 1; i <= d; ++i) {
        weighted += level * i;
        level *= k - 1;
    }
    const std::int64_t surplus = (moore_bound(k, d) - n) * d;
    return Rational(weighted - surplus, n - 1);
}

bool is_generalized_moore(const Graph& g) {
    auto profile = degree_profile(g);
    if (!profile.is_regular) throw NotRegularError("graph is not regular");
    const int k = *profile.k;
    if (k < 3) throw DegreeTooSmallError("is_generalized_moore requires k >= 3");
    Metrics m = metrics(g);
    if (!m.connected) throw DisconnectedError("graph is disconnected");
    return *m.mpl == mpl_lower_bound(k, g.vertex_count());
}

BoundsRecord bounds_record(int k, std::int64_t n) {
    BoundsRecord rec;
    rec.n = static_cast<int>(n);
    rec.k = k;
    rec.d_min = diameter_lower_bound(k, n);
    rec.moore_at_dmin = moore_bound(k, rec.d_min);
    rec.mpl_min = mpl_lower_bound(k, n);
    return rec;
}

}  // namespace regraph
