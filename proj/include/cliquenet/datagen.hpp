#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "rng.hpp"
#include "topology.hpp"

namespace cliquenet {

enum class Family { Uniform, Gaussian, Parity };

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Gaussian: return "gaussian";
    case Family::Parity: return "parity";
    }
    return "?";
}

inline Family parse_family(std::string_view name) {
    if (name == "uniform") return Family::Uniform;
    if (name == "gaussian") return Family::Gaussian;
    if (name == "parity") return Family::Parity;
    throw InvalidArgument("unknown dataset family: " + std::string(name));
}

struct DatasetSpec {
    Family family = Family::Uniform;
    std::size_t messages = 1;
    std::size_t positions = 8;
    std::size_t base = 256;
    double sigma = 16.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (messages < 1)
            throw InvalidArgument("dataset needs at least one message");
        if (positions < 1)
            throw InvalidArgument("dataset needs at least one position");
        if (base < 1)
            throw InvalidArgument("symbol base must be >= 1");
        if (family == Family::Gaussian && !(sigma > 0.0))
            throw InvalidArgument("gaussian sigma must be > 0");
        if (family == Family::Parity && base % 2 != 0)
            throw InvalidArgument("parity family needs an even base, got " + std::to_string(base));
    }
};

using Dataset = std::vector<Message>;

// Every generator draws messages sequentially from one stream, so the first
// k messages of a dataset of size M equal the dataset of size k.

inline Dataset gen_uniform(const DatasetSpec& spec) {
    spec.validate();
    auto rng = make_rng(spec.seed, streams::dataset);
    std::uniform_int_distribution<Symbol> pick(0, static_cast<Symbol>(spec.base - 1));
    Dataset out(spec.messages, Message(spec.positions));
    for (auto& m : out)
        for (auto& s : m)
            s = pick(rng);
    return out;
}

/// Symbols round(N((base-1)/2, sigma)) clamped to [0, base-1].
inline Dataset gen_gaussian(const DatasetSpec& spec) {
    spec.validate();
    auto rng = make_rng(spec.seed, streams::dataset);
    const double mean = (static_cast<double>(spec.base) - 1.0) / 2.0;
    std::normal_distribution<double> normal(mean, spec.sigma);
    const double top = static_cast<double>(spec.base - 1);
    Dataset out(spec.messages, Message(spec.positions));
    for (auto& m : out)
        for (auto& s : m)
            s = static_cast<Symbol>(std::clamp(std::round(normal(rng)), 0.0, top));
    return out;
}

/// Each message draws one fair parity bit; all of its symbols share it.
inline Dataset gen_parity(const DatasetSpec& spec) {
    spec.validate();
    auto rng = make_rng(spec.seed, streams::dataset);
    std::bernoulli_distribution parity(0.5);
    std::uniform_int_distribution<Symbol> half(0, static_cast<Symbol>(spec.base / 2 - 1));
    Dataset out(spec.messages, Message(spec.positions));
    for (auto& m : out) {
        const Symbol p = parity(rng) ? 1 : 0;
        for (auto& s : m)
            s = 2 * half(rng) + p;
    }
    return out;
}

inline Dataset generate(const DatasetSpec& spec) {
    switch (spec.family) {
    case Family::Uniform: return gen_uniform(spec);
    case Family::Gaussian: return gen_gaussian(spec);
    case Family::Parity: return gen_parity(spec);
    }
    throw InvalidArgument("unknown family");
}

// Dataset file: `#GBMSG1 c=<c> base=<base>` then one message per line.

inline void write_dataset(std::ostream& out, const Dataset& data, std::size_t positions, std::size_t base) {
    out << "#GBMSG1 c=" << positions << " base=" << base << '\n';
    for (const auto& m : data) {
        for (std::size_t i = 0; i < m.size(); ++i)
            out << (i ? " " : "") << m[i];
        out << '\n';
    }
}

struct LoadedDataset {
    std::size_t positions = 0;
    std::size_t base = 0;
    Dataset messages;
};

inline LoadedDataset read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("empty dataset file");
    LoadedDataset out;
    {
        std::istringstream hs(line);
        std::string magic, cfield, bfield;
        if (!(hs >> magic >> cfield >> bfield) || magic != "#GBMSG1" || cfield.rfind("c=", 0) != 0 ||
            bfield.rfind("base=", 0) != 0)
            throw FormatError("bad dataset header: " + line);
        try {
            out.positions = std::stoul(cfield.substr(2));
            out.base = std::stoul(bfield.substr(5));
        } catch (const std::exception&) {
            throw FormatError("bad dataset header: " + line);
        }
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        Message m;
        long long v = 0;
        while (ls >> v) {
            if (v < 0 || static_cast<std::size_t>(v) >= out.base)
                throw FormatError("symbol out of range on line " + std::to_string(lineno));
            m.push_back(static_cast<Symbol>(v));
        }
        if (!ls.eof() || m.size() != out.positions)
            throw FormatError("malformed message on line " + std::to_string(lineno));
        out.messages.push_back(std::move(m));
    }
    return out;
}

} // namespace cliquenet
