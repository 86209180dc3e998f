#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bit_matrix.hpp"
#include "error.hpp"
#include "topology.hpp"

namespace cliquenet {

struct RetrievalConfig {
    unsigned max_iterations = 4;
    /// Score bonus a fanal receives from its own activity (0 = pure sum of received signals).
    unsigned memory_weight = 0;
    bool clamp_known = true;

    void validate() const {
        if (max_iterations < 1)
            throw InvalidArgument("max_iterations must be >= 1");
    }
};

/// Binary activity of every fanal, stored as the sorted list of active
/// fanal indices of each cluster.
class ActivationState {
public:
    ActivationState() = default;
    explicit ActivationState(const NetworkTopology& topology) : active_(topology.clusters()) {}

    std::size_t clusters() const noexcept { return active_.size(); }
    const std::vector<Symbol>& active(std::size_t cluster) const { return active_.at(cluster); }

    bool is_active(std::size_t cluster, Symbol fanal) const {
        const auto& a = active_.at(cluster);
        return std::binary_search(a.begin(), a.end(), fanal);
    }

    void activate(std::size_t cluster, Symbol fanal) {
        auto& a = active_.at(cluster);
        auto it = std::lower_bound(a.begin(), a.end(), fanal);
        if (it == a.end() || *it != fanal)
            a.insert(it, fanal);
    }

    void clear(std::size_t cluster) { active_.at(cluster).clear(); }
    void assign(std::size_t cluster, std::vector<Symbol> sorted) { active_.at(cluster) = std::move(sorted); }

    bool ambiguous(std::size_t cluster) const { return active_.at(cluster).size() >= 2; }

    std::size_t active_count() const noexcept {
        std::size_t n = 0;
        for (const auto& a : active_)
            n += a.size();
        return n;
    }

    friend bool operator==(const ActivationState&, const ActivationState&) = default;

private:
    std::vector<std::vector<Symbol>> active_;
};

/// What retrieval concluded about one position.
struct PositionOutcome {
    enum class Kind { Unique, Ambiguous, Empty };

    Kind kind = Kind::Empty;
    std::vector<Symbol> candidates;
    bool known = false;

    bool unique() const noexcept { return kind == Kind::Unique; }
    Symbol symbol() const { return candidates.at(0); }

    static PositionOutcome from_active(const std::vector<Symbol>& active, bool known) {
        PositionOutcome out;
        out.candidates = active;
        out.known = known;
        out.kind = active.empty()       ? Kind::Empty
                   : active.size() == 1 ? Kind::Unique
                                        : Kind::Ambiguous;
        return out;
    }
};

struct RetrievalResult {
    std::vector<PositionOutcome> positions;
    unsigned iterations = 0;

    /// True when every position holds exactly one symbol.
    bool complete() const noexcept {
        return std::all_of(positions.begin(), positions.end(),
                           [](const PositionOutcome& p) { return p.unique(); });
    }

    std::optional<Message> message() const {
        if (!complete())
            return std::nullopt;
        Message m;
        m.reserve(positions.size());
        for (const auto& p : positions)
            m.push_back(p.symbol());
        return m;
    }
};

/// Clustered binary network storing messages as cliques.
///
/// Connections only exist between fanals of distinct clusters. Each ordered
/// pair of clusters (i, i') owns an l_i x l_i' bit matrix; both orientations
/// are kept in sync so that any fanal's row towards any other cluster can be
/// scanned directly during message passing.
class Network {
public:
    explicit Network(NetworkTopology topology)
        : topology_(std::move(topology)), matrices_(topology_.clusters() * topology_.clusters()) {
        const auto c = topology_.clusters();
        if (c < 2)
            throw InvalidArgument("network needs at least 2 clusters");
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t k = 0; k < c; ++k)
                if (i != k)
                    matrices_[i * c + k] = BitMatrix(topology_.cluster_size(i), topology_.cluster_size(k));
    }

    const NetworkTopology& topology() const noexcept { return topology_; }

    /// Connects every pair of fanals selected by the message. Rejects the
    /// message without touching the network if any symbol is out of range.
    void store(const Message& message) {
        check_message(topology_, message);
        const auto c = topology_.clusters();
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t k = i + 1; k < c; ++k)
                connect(i, message[i], k, message[k]);
    }

    void connect(std::size_t i, Symbol a, std::size_t k, Symbol b) {
        if (pair(i, k).set(a, b)) {
            pair(k, i).set(b, a);
            ++edges_;
        }
    }

    bool connected(std::size_t i, Symbol a, std::size_t k, Symbol b) const {
        if (i == k)
            return false;
        return pair(i, k).test(a, b);
    }

    /// Bit matrix of cluster i (rows) towards cluster k (columns).
    const BitMatrix& pair(std::size_t i, std::size_t k) const {
        check_pair(i, k);
        return matrices_[i * topology_.clusters() + k];
    }

    std::size_t edge_count() const noexcept { return edges_; }

    std::size_t potential_connections() const noexcept {
        const auto& s = topology_.cluster_sizes();
        std::size_t total = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t k = i + 1; k < s.size(); ++k)
                total += s[i] * s[k];
        return total;
    }

    double empirical_density(std::size_t i, std::size_t k) const {
        const auto& m = pair(i, k);
        return static_cast<double>(m.count()) / static_cast<double>(m.rows() * m.cols());
    }

    double global_density() const noexcept {
        return static_cast<double>(edges_) / static_cast<double>(potential_connections());
    }

    /// Number of connections incident to fanal (cluster, fanal).
    std::size_t degree(std::size_t cluster, Symbol fanal) const {
        std::size_t d = 0;
        for (std::size_t k = 0; k < topology_.clusters(); ++k)
            if (k != cluster)
                d += pair(cluster, k).row_count(fanal);
        return d;
    }

    /// One round of message passing followed by Winner-Takes-All in every
    /// cluster not flagged in `clamped`.
    ActivationState propagate(const ActivationState& state, const std::vector<bool>& clamped,
                              const RetrievalConfig& config) const {
        std::vector<std::vector<std::uint32_t>> scratch;
        return propagate(state, clamped, config, scratch);
    }

    RetrievalResult retrieve(const Probe& probe, const RetrievalConfig& config = {}) const {
        config.validate();
        const auto c = topology_.clusters();
        if (probe.size() != c)
            throw InvalidArgument("probe length " + std::to_string(probe.size()) +
                                  " does not match " + std::to_string(c) + " clusters");
        if (probe.erased_count() == c)
            throw InvalidArgument("probe has no known entry");

        ActivationState state(topology_);
        std::vector<bool> clamped(c, false);
        for (std::size_t i = 0; i < c; ++i) {
            if (!probe.known(i))
                continue;
            const Symbol s = *probe[i];
            if (s >= topology_.cluster_size(i))
                throw InvalidArgument("probe symbol " + std::to_string(s) + " at position " +
                                      std::to_string(i) + " out of range");
            state.activate(i, s);
            clamped[i] = config.clamp_known;
        }

        RetrievalResult result;
        std::vector<std::vector<std::uint32_t>> scratch;
        // Nothing to decode when every cluster is clamped.
        if (std::find(clamped.begin(), clamped.end(), false) != clamped.end()) {
            while (result.iterations < config.max_iterations) {
                auto next = propagate(state, clamped, config, scratch);
                ++result.iterations;
                const bool fixed = next == state;
                state = std::move(next);
                if (fixed)
                    break;
            }
        }

        result.positions.reserve(c);
        for (std::size_t i = 0; i < c; ++i) {
            if (probe.known(i) && config.clamp_known)
                result.positions.push_back(PositionOutcome::from_active({*probe[i]}, true));
            else
                result.positions.push_back(PositionOutcome::from_active(state.active(i), probe.known(i)));
        }
        return result;
    }

    // Serialization: text header `GBNET1 <c> <l_1> ... <l_c>\n`, then for each
    // pair i < k in lexicographic order the l_i x l_k matrix packed row-major,
    // least significant bit first within a byte, padded to a byte boundary.
    void save(std::ostream& out) const {
        out << "GBNET1 " << topology_.clusters();
        for (auto s : topology_.cluster_sizes())
            out << ' ' << s;
        out << '\n';
        const auto c = topology_.clusters();
        std::vector<char> bytes;
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t k = i + 1; k < c; ++k) {
                const auto& m = pair(i, k);
                bytes.assign((m.rows() * m.cols() + 7) / 8, 0);
                std::size_t bit = 0;
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t col = 0; col < m.cols(); ++col, ++bit)
                        if (m.test(r, col))
                            bytes[bit / 8] = static_cast<char>(bytes[bit / 8] | (1u << (bit % 8)));
                out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            }
        if (!out)
            throw FormatError("failed writing network");
    }

    static Network load(std::istream& in) {
        std::string header;
        if (!std::getline(in, header))
            throw FormatError("missing network header");
        std::istringstream hs(header);
        std::string magic;
        std::size_t c = 0;
        if (!(hs >> magic >> c) || magic != "GBNET1")
            throw FormatError("bad network header: " + header);
        std::vector<std::size_t> sizes(c);
        for (auto& s : sizes)
            if (!(hs >> s))
                throw FormatError("truncated network header: " + header);
        Network net{NetworkTopology(std::move(sizes))};
        std::vector<char> bytes;
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t k = i + 1; k < c; ++k) {
                const auto rows = net.topology_.cluster_size(i);
                const auto cols = net.topology_.cluster_size(k);
                bytes.resize((rows * cols + 7) / 8);
                if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size())))
                    throw FormatError("truncated matrix for pair " + std::to_string(i) + "," +
                                      std::to_string(k));
                std::size_t bit = 0;
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t col = 0; col < cols; ++col, ++bit)
                        if ((static_cast<unsigned char>(bytes[bit / 8]) >> (bit % 8)) & 1u)
                            net.connect(i, static_cast<Symbol>(r), k, static_cast<Symbol>(col));
            }
        return net;
    }

    friend bool operator==(const Network& a, const Network& b) {
        return a.topology_ == b.topology_ && a.matrices_ == b.matrices_;
    }

private:
    BitMatrix& pair(std::size_t i, std::size_t k) {
        check_pair(i, k);
        return matrices_[i * topology_.clusters() + k];
    }

    void check_pair(std::size_t i, std::size_t k) const {
        const auto c = topology_.clusters();
        if (i >= c || k >= c || i == k)
            throw InvalidArgument("invalid cluster pair (" + std::to_string(i) + ", " +
                                  std::to_string(k) + ")");
    }

    ActivationState propagate(const ActivationState& state, const std::vector<bool>& clamped,
                              const RetrievalConfig& config,
                              std::vector<std::vector<std::uint32_t>>& scores) const {
        const auto c = topology_.clusters();
        scores.resize(c);
        ActivationState next = state;
        for (std::size_t k = 0; k < c; ++k) {
            if (k < clamped.size() && clamped[k])
                continue;
            auto& s = scores[k];
            s.assign(topology_.cluster_size(k), 0);
            for (std::size_t i = 0; i < c; ++i) {
                if (i == k)
                    continue;
                const auto& m = matrices_[i * c + k];
                for (Symbol a : state.active(i))
                    m.for_each_in_row(a, [&s](std::size_t b) { ++s[b]; });
            }
            if (config.memory_weight > 0)
                for (Symbol a : state.active(k))
                    s[a] += config.memory_weight;

            const auto best = *std::max_element(s.begin(), s.end());
            std::vector<Symbol> winners;
            if (best > 0)
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (s[j] == best)
                        winners.push_back(static_cast<Symbol>(j));
            next.assign(k, std::move(winners));
        }
        return next;
    }

    NetworkTopology topology_;
    std::vector<BitMatrix> matrices_;
    std::size_t edges_ = 0;
};

} // namespace cliquenet
