#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "topology.hpp"

namespace cliquenet::analytics {

/// Expected fraction of established connections between two clusters of
/// sizes l_a and l_b after storing `messages` uniform i.i.d. messages:
/// 1 - (1 - 1/(l_a l_b))^M, evaluated through log1p/expm1.
inline double expected_density(std::uint64_t messages, std::size_t l_a, std::size_t l_b) {
    if (l_a < 1 || l_b < 1)
        throw InvalidArgument("cluster sizes must be >= 1");
    if (messages == 0)
        return 0.0;
    const double cells = static_cast<double>(l_a) * static_cast<double>(l_b);
    if (cells == 1.0)
        return 1.0;
    return -std::expm1(static_cast<double>(messages) * std::log1p(-1.0 / cells));
}

/// Connection-count weighted expected density over every cluster pair.
inline double expected_density(std::uint64_t messages, const NetworkTopology& topology) {
    const auto& s = topology.cluster_sizes();
    double weighted = 0.0, total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = i + 1; k < s.size(); ++k) {
            const double cells = static_cast<double>(s[i]) * static_cast<double>(s[k]);
            weighted += cells * expected_density(messages, s[i], s[k]);
            total += cells;
        }
    return weighted / total;
}

/// Probability that a single message-passing round fails to recover a
/// message with `erased` of `clusters` positions missing, in a network of
/// density d and cluster size l. Assumes spurious connections independent.
inline double single_iteration_error(double density, std::size_t clusters, std::size_t erased,
                                     std::size_t cluster_size) {
    if (!(density >= 0.0 && density <= 1.0))
        throw InvalidArgument("density must lie in [0, 1]");
    if (erased < 1 || erased >= clusters)
        throw InvalidArgument("erased count must satisfy 1 <= c_e < c");
    if (cluster_size < 1)
        throw InvalidArgument("cluster size must be >= 1");

    const double spurious = std::pow(density, static_cast<double>(clusters - erased));
    const double competitors = static_cast<double>(cluster_size - 1) * static_cast<double>(erased);
    if (competitors == 0.0 || spurious == 0.0)
        return 0.0;
    if (spurious >= 1.0)
        return 1.0;
    return -std::expm1(competitors * std::log1p(-spurious));
}

/// Number of possible connections of a topology: sum of l_i l_k over i < k.
inline std::uint64_t material(const NetworkTopology& topology) {
    const auto& s = topology.cluster_sizes();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = i + 1; k < s.size(); ++k)
            total += static_cast<std::uint64_t>(s[i]) * static_cast<std::uint64_t>(s[k]);
    return total;
}

struct TheoryPoint {
    std::uint64_t messages = 0;
    double density = 0.0;
    double error = 0.0;
};

inline std::vector<TheoryPoint> theory_curve(const std::vector<std::uint64_t>& sweep, std::size_t clusters,
                                             std::size_t cluster_size, std::size_t erased) {
    std::vector<TheoryPoint> out;
    out.reserve(sweep.size());
    for (auto m : sweep) {
        const double d = expected_density(m, cluster_size, cluster_size);
        out.push_back({m, d, single_iteration_error(d, clusters, erased, cluster_size)});
    }
    return out;
}

} // namespace cliquenet::analytics
