#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "codec.hpp"
#include "datagen.hpp"
#include "error.hpp"
#include "network.hpp"
#include "rng.hpp"
#include "topology.hpp"

namespace cliquenet {

/// Which clusters a probe may erase.
enum class ErasureScope {
    OriginalPositions, // only clusters carrying original message positions
    AllPositions,      // every cluster of the augmented message
};

struct StrategyConfig {
    CodecKind kind = CodecKind::Identity;
    unsigned bits = 0;              // extra bits per symbol (bit extension, Huffman)
    std::size_t random_count = 0;   // added clusters (random clusters)
    std::size_t random_size = 0;    // fanals per added cluster

    std::string label() const {
        switch (kind) {
        case CodecKind::Identity: return "identity";
        case CodecKind::RandomClusters:
            return "random-clusters:" + std::to_string(random_count) + "x" + std::to_string(random_size);
        case CodecKind::RandomBits: return "random-bits:" + std::to_string(bits);
        case CodecKind::LeastUsedBits: return "least-used:" + std::to_string(bits);
        case CodecKind::Huffman: return "huffman:" + std::to_string(bits);
        }
        return "?";
    }

    ErasureScope default_scope() const {
        return kind == CodecKind::RandomClusters ? ErasureScope::OriginalPositions : ErasureScope::AllPositions;
    }
};

struct ExperimentConfig {
    DatasetSpec dataset;
    StrategyConfig strategy;
    std::size_t erased = 4;
    std::optional<ErasureScope> scope;
    std::size_t probes = 2000;
    std::vector<std::size_t> sweep;
    RetrievalConfig retrieval;
    std::uint64_t seed = 1;

    ErasureScope effective_scope() const { return scope.value_or(strategy.default_scope()); }
};

struct SweepResult {
    std::string strategy;
    std::size_t messages = 0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double error_rate = 0.0;
    double stderr_ = 0.0;
    double density_emp = 0.0;
    double density_eq1 = 0.0;
    double pe_eq2 = 0.0;
    std::uint64_t seed = 0;
    bool overflow = false;
};

/// Bits needed to represent every symbol below `base`.
inline unsigned base_bits_for(std::size_t base) {
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < base)
        ++bits;
    return bits;
}

/// Codec for `strategy`, built from the messages that will be stored.
inline Codec make_codec(const StrategyConfig& strategy, const Dataset& stored, std::size_t base,
                        std::uint64_t seed) {
    const auto base_bits = base_bits_for(base);
    switch (strategy.kind) {
    case CodecKind::Identity: return Codec(IdentityCodec{});
    case CodecKind::RandomClusters:
        return Codec(RandomClustersCodec{strategy.random_count, strategy.random_size, seed});
    case CodecKind::RandomBits: return Codec(RandomBitsCodec{strategy.bits, base_bits, seed});
    case CodecKind::LeastUsedBits: return Codec(LeastUsedCodec{strategy.bits, base_bits, {}});
    case CodecKind::Huffman: return Codec(HuffmanCodec::build(stored, base_bits, strategy.bits, seed));
    }
    throw InvalidArgument("unknown strategy");
}

struct ErrorEstimate {
    std::size_t trials = 0;
    std::size_t errors = 0;

    double rate() const { return trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0; }
    double standard_error() const {
        if (!trials)
            return 0.0;
        const double p = rate();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
};

/// Erasure-retrieval Monte Carlo over stored messages. A trial fails when an
/// erased cluster does not end with exactly one active fanal, when decoding
/// fails, or when the decoded message differs from the original.
inline ErrorEstimate evaluate_error_rate(const Network& network, const Codec& codec, const Dataset& originals,
                                         const Dataset& augmented, const ExperimentConfig& config,
                                         std::uint64_t stream_index) {
    if (originals.size() != augmented.size() || originals.empty())
        throw InvalidArgument("originals and augmented datasets must be non-empty and of equal size");
    const auto& topo = network.topology();
    const auto original_len = originals.front().size();
    if (augmented.front().size() != topo.clusters() || original_len > topo.clusters())
        throw InvalidArgument("augmented messages do not match the network shape");
    if (config.probes == 0)
        throw InvalidArgument("at least one probe per point is required");

    const auto scope_len =
        config.effective_scope() == ErasureScope::OriginalPositions ? original_len : topo.clusters();
    if (config.erased < 1 || config.erased >= scope_len)
        throw InvalidArgument("erased count " + std::to_string(config.erased) + " must lie in [1, " +
                              std::to_string(scope_len - 1) + "]");
    std::vector<std::size_t> scope(scope_len);
    std::iota(scope.begin(), scope.end(), std::size_t{0});

    auto rng = make_rng(config.seed, streams::probe, stream_index);
    const auto probes = std::min(config.probes, originals.size());
    std::vector<std::size_t> picks(originals.size());
    std::iota(picks.begin(), picks.end(), std::size_t{0});
    if (probes < originals.size()) {
        std::vector<std::size_t> sampled;
        sampled.reserve(probes);
        std::sample(picks.begin(), picks.end(), std::back_inserter(sampled), probes, rng);
        picks = std::move(sampled);
    }

    ErrorEstimate est;
    std::vector<std::size_t> erased;
    for (auto idx : picks) {
        erased.clear();
        std::sample(scope.begin(), scope.end(), std::back_inserter(erased), config.erased, rng);
        const auto& target = augmented[idx];
        const auto result = network.retrieve(Probe::erase(target, erased), config.retrieval);

        ++est.trials;
        bool ok = std::all_of(erased.begin(), erased.end(),
                              [&](std::size_t p) { return result.positions[p].unique(); });
        if (ok) {
            Message completed = target;
            for (auto p : erased)
                completed[p] = result.positions[p].symbol();
            const auto decoded = codec.try_decode(completed);
            ok = decoded && *decoded == originals[idx];
        }
        if (!ok)
            ++est.errors;
    }
    return est;
}

/// Runs one experiment point per sweep entry, each on a fresh network.
/// Rows come back in increasing M order.
inline std::vector<SweepResult> run_sweep(const ExperimentConfig& config) {
    config.retrieval.validate();
    if (config.sweep.empty())
        throw InvalidArgument("sweep list is empty");
    auto sweep = config.sweep;
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());
    if (sweep.front() < 1)
        throw InvalidArgument("sweep points must be >= 1");

    auto spec = config.dataset;
    spec.messages = sweep.back();
    const auto data = generate(spec);
    const auto original_topology = NetworkTopology::uniform(spec.positions, spec.base);

    std::vector<SweepResult> rows;
    for (auto m : sweep) {
        const Dataset prefix(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(m));
        auto codec = make_codec(config.strategy, prefix, spec.base, config.seed);
        const auto topology = codec.output_topology(original_topology);

        SweepResult row;
        row.strategy = config.strategy.label();
        row.messages = m;
        row.seed = config.seed;
        row.density_eq1 = analytics::expected_density(m, topology);
        row.pe_eq2 = analytics::single_iteration_error(row.density_eq1, topology.clusters(), config.erased,
                                                       topology.cluster_size(0));

        Dataset augmented;
        try {
            augmented = codec.encode_all(prefix);
        } catch (const OverflowError&) {
            row.overflow = true;
            rows.push_back(row);
            continue;
        }

        Network net(topology);
        for (const auto& a : augmented)
            net.store(a);
        const auto est = evaluate_error_rate(net, codec, prefix, augmented, config, m);
        row.trials = est.trials;
        row.errors = est.errors;
        row.error_rate = est.rate();
        row.stderr_ = est.standard_error();
        row.density_emp = net.global_density();
        rows.push_back(row);
    }
    return rows;
}

/// Shortest decimal text that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& rows) {
    out << "strategy,M,trials,error_rate,stderr,density_emp,density_eq1,pe_eq2,seed\n";
    for (const auto& r : rows) {
        out << r.strategy << ',' << r.messages << ',' << r.trials << ',';
        if (r.overflow)
            out << "OVERFLOW,,";
        else
            out << format_double(r.error_rate) << ',' << format_double(r.stderr_) << ','
                << format_double(r.density_emp);
        out << ',' << format_double(r.density_eq1) << ',' << format_double(r.pe_eq2) << ',' << r.seed << '\n';
    }
}

inline void write_theory_csv(std::ostream& out, const std::vector<analytics::TheoryPoint>& points) {
    out << "M,d,p_e\n";
    for (const auto& p : points)
        out << p.messages << ',' << format_double(p.density) << ',' << format_double(p.error) << '\n';
}

/// Largest fanal degree divided by the mean degree over all fanals.
inline double degree_peak_ratio(const Network& net) {
    const auto& topo = net.topology();
    std::size_t peak = 0, total = 0;
    for (std::size_t i = 0; i < topo.clusters(); ++i)
        for (std::size_t j = 0; j < topo.cluster_size(i); ++j) {
            const auto d = net.degree(i, static_cast<Symbol>(j));
            peak = std::max(peak, d);
            total += d;
        }
    if (total == 0)
        return 0.0;
    return static_cast<double>(peak) * static_cast<double>(topo.fanals()) / static_cast<double>(total);
}

} // namespace cliquenet
