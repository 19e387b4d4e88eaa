#include "kcmpc/jl.hpp"

#include <cmath>
#include <random>

namespace kcmpc {

Dataset jl_transform(const Dataset& P, std::size_t target_dim, std::uint64_t seed) {
    if (target_dim == 0) throw usage_error("jl_transform: target dimension must be >= 1");
    if (P.empty()) return P;
    const std::size_t d = P.dim();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> M(target_dim, std::vector<double>(d));
    for (auto& row : M)
        for (auto& v : row) v = gauss(rng);

    const double scale = 1.0 / std::sqrt(static_cast<double>(target_dim));
    Dataset out;
    for (const auto& p : P.points) {
        Point q(target_dim, 0.0);
        for (std::size_t i = 0; i < target_dim; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) s += M[i][j] * p[j];
            q[i] = s * scale;
        }
        out.push_back(std::move(q));
    }
    return out;
}

} // namespace kcmpc
