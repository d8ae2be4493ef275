#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace steklov {

std::vector<Cluster> find_clusters(const std::vector<double>& ev, double rel_tol) {
    std::vector<Cluster> out;
    if (ev.empty()) return out;
    Cluster cur{0, 1};
    for (std::size_t i = 1; i < ev.size(); ++i) {
        const double scale = std::max({std::abs(ev[i - 1]), std::abs(ev[i]), 1.0});
        if (ev[i] - ev[i - 1] <= rel_tol * scale) {
            ++cur.count;
        } else {
            out.push_back(cur);
            cur = Cluster{static_cast<int>(i), 1};
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace steklov
