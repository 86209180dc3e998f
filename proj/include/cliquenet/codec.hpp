#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "huffman.hpp"
#include "rng.hpp"
#include "topology.hpp"

namespace cliquenet {

using Dataset = std::vector<Message>;

enum class CodecKind { Identity, RandomClusters, RandomBits, LeastUsedBits, Huffman };

inline std::string_view to_string(CodecKind k) {
    switch (k) {
    case CodecKind::Identity: return "IDENTITY";
    case CodecKind::RandomClusters: return "RANDOM_CLUSTERS";
    case CodecKind::RandomBits: return "RANDOM_BITS";
    case CodecKind::LeastUsedBits: return "LEAST_USED_BITS";
    case CodecKind::Huffman: return "HUFFMAN";
    }
    return "?";
}

inline CodecKind parse_codec_kind(std::string_view name) {
    for (auto k : {CodecKind::Identity, CodecKind::RandomClusters, CodecKind::RandomBits,
                   CodecKind::LeastUsedBits, CodecKind::Huffman})
        if (name == to_string(k))
            return k;
    throw FormatError("unknown codec kind: " + std::string(name));
}

struct IdentityCodec {
    Message encode(const Message& m, std::uint64_t) const { return m; }
    std::optional<Message> decode(const Message& augmented) const { return augmented; }
    NetworkTopology topology(const NetworkTopology& t) const { return t; }
};

/// Appends `count` clusters of `size` fanals, each filled with a fresh
/// uniform value per message (a stamp). Decoding drops the stamps.
struct RandomClustersCodec {
    std::size_t count = 1;
    std::size_t size = 2;
    std::uint64_t seed = 0;

    void validate() const {
        if (count > 0 && size < 2)
            throw InvalidArgument("random clusters need at least 2 fanals each");
    }

    Message encode(const Message& m, std::uint64_t index) const {
        Message out = m;
        if (count == 0)
            return out;
        auto rng = make_rng(seed, streams::encode, index);
        std::uniform_int_distribution<Symbol> stamp(0, static_cast<Symbol>(size - 1));
        for (std::size_t r = 0; r < count; ++r)
            out.push_back(stamp(rng));
        return out;
    }

    std::optional<Message> decode(const Message& augmented) const {
        if (augmented.size() <= count)
            return std::nullopt;
        return Message(augmented.begin(), augmented.end() - static_cast<std::ptrdiff_t>(count));
    }

    NetworkTopology topology(const NetworkTopology& t) const {
        return count == 0 ? t : t.extended(count, size);
    }
};

namespace detail {

inline void check_base(const Message& m, unsigned base_bits) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if ((static_cast<std::uint64_t>(m[i]) >> base_bits) != 0)
            throw InvalidArgument("symbol " + std::to_string(m[i]) + " at position " + std::to_string(i) +
                                  " does not fit in " + std::to_string(base_bits) + " bits");
}

inline std::optional<Message> drop_low_bits(const Message& augmented, unsigned bits, unsigned base_bits) {
    Message out;
    out.reserve(augmented.size());
    for (auto s : augmented) {
        if ((static_cast<std::uint64_t>(s) >> (base_bits + bits)) != 0)
            return std::nullopt;
        out.push_back(s >> bits);
    }
    return out;
}

inline NetworkTopology widened(const NetworkTopology& t, unsigned bits, unsigned base_bits) {
    const std::size_t limit = std::size_t{1} << base_bits;
    for (auto s : t.cluster_sizes())
        if (s > limit)
            throw InvalidArgument("cluster of size " + std::to_string(s) + " exceeds " +
                                  std::to_string(base_bits) + " base bits");
    return NetworkTopology::uniform(t.clusters(), std::size_t{1} << (base_bits + bits));
}

} // namespace detail

/// Extends every symbol v to (v << bits) | e with e uniform random.
struct RandomBitsCodec {
    unsigned bits = 0;
    unsigned base_bits = 8;
    std::uint64_t seed = 0;

    Message encode(const Message& m, std::uint64_t index) const {
        detail::check_base(m, base_bits);
        if (bits == 0)
            return m;
        auto rng = make_rng(seed, streams::encode, index);
        std::uniform_int_distribution<Symbol> ext(0, (Symbol{1} << bits) - 1);
        Message out;
        out.reserve(m.size());
        for (auto v : m)
            out.push_back((v << bits) | ext(rng));
        return out;
    }

    std::optional<Message> decode(const Message& augmented) const {
        return detail::drop_low_bits(augmented, bits, base_bits);
    }

    NetworkTopology topology(const NetworkTopology& t) const { return detail::widened(t, bits, base_bits); }
};

/// Extends every symbol with the least used extension seen so far for the
/// same (position, value); ties go to the lowest extension. Stateful: the
/// dataset must be encoded once, in order.
struct LeastUsedCodec {
    using Key = std::pair<std::size_t, Symbol>;

    unsigned bits = 0;
    unsigned base_bits = 8;
    std::map<Key, std::vector<std::uint32_t>> occurrences;

    Message encode(const Message& m, std::uint64_t = 0) {
        detail::check_base(m, base_bits);
        Message out;
        out.reserve(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            auto& counters = occurrences[{i, m[i]}];
            if (counters.empty())
                counters.assign(std::size_t{1} << bits, 0);
            const auto e = static_cast<Symbol>(std::min_element(counters.begin(), counters.end()) - counters.begin());
            ++counters[e];
            out.push_back((m[i] << bits) | e);
        }
        return out;
    }

    std::optional<Message> decode(const Message& augmented) const {
        return detail::drop_low_bits(augmented, bits, base_bits);
    }

    NetworkTopology topology(const NetworkTopology& t) const { return detail::widened(t, bits, base_bits); }

    /// Largest max - min spread over all occurrence tables.
    std::uint32_t max_spread() const {
        std::uint32_t spread = 0;
        for (const auto& [key, counters] : occurrences) {
            auto [lo, hi] = std::minmax_element(counters.begin(), counters.end());
            spread = std::max(spread, *hi - *lo);
        }
        return spread;
    }
};

/// Per-position Huffman codes. A message is coded as the concatenation of
/// its codewords, padded with random bits to positions * chunk_bits bits and
/// cut into one chunk per position, most significant bit first.
struct HuffmanCodec {
    std::vector<HuffmanCodebook> books;
    unsigned base_bits = 8;
    unsigned extra_bits = 0;
    std::uint64_t pad_seed = 0;

    static HuffmanCodec build(const Dataset& dataset, unsigned base_bits, unsigned extra_bits,
                              std::uint64_t pad_seed) {
        if (dataset.empty())
            throw InvalidArgument("cannot build Huffman codes from an empty dataset");
        const auto positions = dataset.front().size();
        std::vector<std::map<Symbol, std::uint64_t>> freq(positions);
        for (const auto& m : dataset) {
            if (m.size() != positions)
                throw InvalidArgument("dataset messages differ in length");
            for (std::size_t i = 0; i < positions; ++i)
                ++freq[i][m[i]];
        }
        HuffmanCodec codec;
        codec.base_bits = base_bits;
        codec.extra_bits = extra_bits;
        codec.pad_seed = pad_seed;
        for (const auto& f : freq)
            codec.books.push_back(HuffmanCodebook::build(f));
        return codec;
    }

    std::size_t positions() const noexcept { return books.size(); }
    unsigned chunk_bits() const noexcept { return base_bits + extra_bits; }
    std::size_t capacity() const noexcept { return positions() * chunk_bits(); }

    std::size_t coded_length(const Message& m) const {
        check_shape(m);
        std::size_t bits = 0;
        for (std::size_t i = 0; i < m.size(); ++i)
            bits += word(i, m[i]).size();
        return bits;
    }

    Message encode(const Message& m, std::uint64_t index) const {
        const auto length = coded_length(m);
        if (length > capacity())
            throw OverflowError("coded message needs " + std::to_string(length) + " bits, only " +
                                std::to_string(capacity()) + " available");
        std::vector<bool> stream;
        stream.reserve(capacity());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (char ch : word(i, m[i]))
                stream.push_back(ch == '1');
        auto rng = make_rng(pad_seed, streams::encode, index);
        std::bernoulli_distribution coin(0.5);
        while (stream.size() < capacity())
            stream.push_back(coin(rng));

        Message out(positions(), 0);
        const auto cb = chunk_bits();
        for (std::size_t k = 0; k < out.size(); ++k)
            for (unsigned b = 0; b < cb; ++b)
                out[k] = (out[k] << 1) | (stream[k * cb + b] ? 1u : 0u);
        return out;
    }

    std::optional<Message> decode(const Message& augmented) const {
        if (augmented.size() != positions())
            return std::nullopt;
        const auto cb = chunk_bits();
        std::vector<bool> stream;
        stream.reserve(capacity());
        for (auto chunk : augmented) {
            if ((static_cast<std::uint64_t>(chunk) >> cb) != 0)
                return std::nullopt;
            for (unsigned b = cb; b-- > 0;)
                stream.push_back((chunk >> b) & 1u);
        }
        Message out;
        out.reserve(positions());
        std::size_t pos = 0;
        for (const auto& book : books) {
            auto s = book.read(stream, pos);
            if (!s)
                return std::nullopt;
            out.push_back(*s);
        }
        return out;
    }

    NetworkTopology topology(const NetworkTopology& t) const {
        if (t.clusters() != positions())
            throw InvalidArgument("topology has " + std::to_string(t.clusters()) + " clusters, codec " +
                                  std::to_string(positions()) + " positions");
        return NetworkTopology::uniform(positions(), std::size_t{1} << chunk_bits());
    }

private:
    void check_shape(const Message& m) const {
        if (m.size() != positions())
            throw InvalidArgument("message length " + std::to_string(m.size()) + " does not match " +
                                  std::to_string(positions()) + " codebooks");
    }

    const std::string& word(std::size_t position, Symbol s) const {
        const auto* w = books[position].codeword(s);
        if (!w)
            throw InvalidArgument("symbol " + std::to_string(s) + " at position " + std::to_string(position) +
                                  " has no codeword");
        return *w;
    }
};

/// A reversible message transform applied before storage.
class Codec {
public:
    using Variant = std::variant<IdentityCodec, RandomClustersCodec, RandomBitsCodec, LeastUsedCodec, HuffmanCodec>;

    Codec() = default;
    Codec(Variant v) : v_(std::move(v)) {
        if (auto* rc = std::get_if<RandomClustersCodec>(&v_))
            rc->validate();
    }

    CodecKind kind() const noexcept { return static_cast<CodecKind>(v_.index()); }

    template <class T>
    const T* get() const noexcept {
        return std::get_if<T>(&v_);
    }

    /// Encodes the message with index `index` of the dataset. The index
    /// selects the random stream, so encoding is reproducible.
    Message encode(const Message& m, std::uint64_t index) {
        return std::visit([&](auto& c) { return c.encode(m, index); }, v_);
    }

    Dataset encode_all(const Dataset& data) {
        Dataset out;
        out.reserve(data.size());
        for (std::size_t k = 0; k < data.size(); ++k)
            out.push_back(encode(data[k], k));
        return out;
    }

    std::optional<Message> try_decode(const Message& augmented) const {
        return std::visit([&](const auto& c) { return c.decode(augmented); }, v_);
    }

    Message decode(const Message& augmented) const {
        auto m = try_decode(augmented);
        if (!m)
            throw DecodeError(std::string("cannot decode message with ") + std::string(to_string(kind())) +
                              " codec");
        return *std::move(m);
    }

    NetworkTopology output_topology(const NetworkTopology& input) const {
        return std::visit([&](const auto& c) { return c.topology(input); }, v_);
    }

    // Codec file: `GBCODEC1 <KIND>` followed by a kind specific payload.
    void save(std::ostream& out) const {
        out << "GBCODEC1 " << to_string(kind()) << '\n';
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, RandomClustersCodec>) {
                    out << c.count << ' ' << c.size << ' ' << c.seed << '\n';
                } else if constexpr (std::is_same_v<T, RandomBitsCodec>) {
                    out << c.bits << ' ' << c.base_bits << ' ' << c.seed << '\n';
                } else if constexpr (std::is_same_v<T, LeastUsedCodec>) {
                    out << c.bits << ' ' << c.base_bits << '\n' << c.occurrences.size() << '\n';
                    for (const auto& [key, counters] : c.occurrences) {
                        out << key.first << ' ' << key.second;
                        for (auto n : counters)
                            out << ' ' << n;
                        out << '\n';
                    }
                } else if constexpr (std::is_same_v<T, HuffmanCodec>) {
                    out << c.positions() << ' ' << c.base_bits << ' ' << c.extra_bits << ' ' << c.pad_seed << '\n';
                    for (std::size_t i = 0; i < c.books.size(); ++i) {
                        const auto& words = c.books[i].codewords();
                        out << "position " << i << ' ' << words.size() << '\n';
                        for (const auto& [s, w] : words)
                            out << s << ' ' << w << '\n';
                    }
                }
            },
            v_);
        if (!out)
            throw FormatError("failed writing codec");
    }

    static Codec load(std::istream& in) {
        std::string magic, name;
        if (!(in >> magic >> name) || magic != "GBCODEC1")
            throw FormatError("bad codec header");
        const auto fail = [](const char* what) { return FormatError(std::string("malformed codec: ") + what); };
        switch (parse_codec_kind(name)) {
        case CodecKind::Identity:
            return Codec(IdentityCodec{});
        case CodecKind::RandomClusters: {
            RandomClustersCodec c;
            if (!(in >> c.count >> c.size >> c.seed))
                throw fail("random clusters parameters");
            return Codec(c);
        }
        case CodecKind::RandomBits: {
            RandomBitsCodec c;
            if (!(in >> c.bits >> c.base_bits >> c.seed))
                throw fail("random bits parameters");
            return Codec(c);
        }
        case CodecKind::LeastUsedBits: {
            LeastUsedCodec c;
            std::size_t tables = 0;
            if (!(in >> c.bits >> c.base_bits >> tables))
                throw fail("least used parameters");
            for (std::size_t t = 0; t < tables; ++t) {
                std::size_t pos = 0;
                Symbol value = 0;
                std::vector<std::uint32_t> counters(std::size_t{1} << c.bits);
                if (!(in >> pos >> value))
                    throw fail("occurrence table key");
                for (auto& n : counters)
                    if (!(in >> n))
                        throw fail("occurrence counter");
                c.occurrences[{pos, value}] = std::move(counters);
            }
            return Codec(std::move(c));
        }
        case CodecKind::Huffman: {
            HuffmanCodec c;
            std::size_t positions = 0;
            if (!(in >> positions >> c.base_bits >> c.extra_bits >> c.pad_seed))
                throw fail("huffman parameters");
            for (std::size_t i = 0; i < positions; ++i) {
                std::string tag;
                std::size_t index = 0, count = 0;
                if (!(in >> tag >> index >> count) || tag != "position" || index != i)
                    throw fail("huffman position block");
                std::map<Symbol, std::string> words;
                for (std::size_t k = 0; k < count; ++k) {
                    Symbol s = 0;
                    std::string w;
                    if (!(in >> s >> w))
                        throw fail("huffman codeword");
                    words[s] = w;
                }
                try {
                    c.books.push_back(HuffmanCodebook::from_codewords(std::move(words)));
                } catch (const InvalidArgument& e) {
                    throw FormatError(e.what());
                }
            }
            return Codec(std::move(c));
        }
        }
        throw fail("kind");
    }

private:
    Variant v_;
};

} // namespace cliquenet
