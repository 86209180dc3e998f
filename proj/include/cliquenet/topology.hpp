#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace cliquenet {

using Symbol = std::uint32_t;

/// Cluster layout of a network: c disjoint clusters of l_i fanals each.
class NetworkTopology {
public:
    NetworkTopology() = default;

    explicit NetworkTopology(std::vector<std::size_t> cluster_sizes)
        : sizes_(std::move(cluster_sizes)) {
        if (sizes_.size() < 2)
            throw InvalidArgument("topology needs at least 2 clusters, got " +
                                  std::to_string(sizes_.size()));
        for (std::size_t i = 0; i < sizes_.size(); ++i)
            if (sizes_[i] < 1)
                throw InvalidArgument("cluster " + std::to_string(i) + " is empty");
    }

    NetworkTopology(std::initializer_list<std::size_t> sizes)
        : NetworkTopology(std::vector<std::size_t>(sizes)) {}

    static NetworkTopology uniform(std::size_t clusters, std::size_t size) {
        return NetworkTopology(std::vector<std::size_t>(clusters, size));
    }

    std::size_t clusters() const noexcept { return sizes_.size(); }
    std::size_t cluster_size(std::size_t i) const { return sizes_.at(i); }
    const std::vector<std::size_t>& cluster_sizes() const noexcept { return sizes_; }

    std::size_t fanals() const noexcept {
        return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0});
    }

    bool is_uniform() const noexcept {
        for (auto s : sizes_)
            if (s != sizes_.front())
                return false;
        return true;
    }

    /// Concatenation of this layout with extra clusters appended.
    NetworkTopology extended(std::size_t count, std::size_t size) const {
        auto sizes = sizes_;
        sizes.insert(sizes.end(), count, size);
        return NetworkTopology(std::move(sizes));
    }

    friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;

private:
    std::vector<std::size_t> sizes_;
};

/// A full tuple of symbols, one per cluster.
using Message = std::vector<Symbol>;

/// A partially erased message. Erased entries are std::nullopt.
class Probe {
public:
    Probe() = default;
    explicit Probe(std::vector<std::optional<Symbol>> entries) : entries_(std::move(entries)) {}

    /// Copy of `message` with the listed positions erased.
    static Probe erase(const Message& message, const std::vector<std::size_t>& erased) {
        std::vector<std::optional<Symbol>> entries(message.begin(), message.end());
        for (auto p : erased)
            entries.at(p).reset();
        return Probe(std::move(entries));
    }

    std::size_t size() const noexcept { return entries_.size(); }
    const std::optional<Symbol>& operator[](std::size_t i) const { return entries_[i]; }
    bool known(std::size_t i) const { return entries_[i].has_value(); }

    std::size_t erased_count() const noexcept {
        std::size_t n = 0;
        for (const auto& e : entries_)
            n += e.has_value() ? 0 : 1;
        return n;
    }

    const std::vector<std::optional<Symbol>>& entries() const noexcept { return entries_; }

private:
    std::vector<std::optional<Symbol>> entries_;
};

inline void check_message(const NetworkTopology& topology, const Message& message) {
    if (message.size() != topology.clusters())
        throw InvalidArgument("message length " + std::to_string(message.size()) +
                              " does not match " + std::to_string(topology.clusters()) +
                              " clusters");
    for (std::size_t i = 0; i < message.size(); ++i)
        if (message[i] >= topology.cluster_size(i))
            throw InvalidArgument("symbol " + std::to_string(message[i]) + " at position " +
                                  std::to_string(i) + " exceeds cluster size " +
                                  std::to_string(topology.cluster_size(i)));
}

} // namespace cliquenet
