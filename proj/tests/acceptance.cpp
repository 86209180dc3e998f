// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails. Every experiment runs at full scale
// (c = 8 clusters of 256 fanals, c_e = 4, 2000 probes per point, seed 1).

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cliquenet/cliquenet.hpp"
#include "oracles.hpp"

using namespace cliquenet;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr double kSigma = 16.0;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const Outcome& o) {
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

ExperimentConfig base_config(Family family, StrategyConfig strategy = {}) {
    ExperimentConfig cfg;
    cfg.dataset = {family, 1, 8, 256, kSigma, kSeed};
    cfg.strategy = strategy;
    cfg.erased = 4;
    cfg.probes = 2000;
    cfg.seed = kSeed;
    return cfg;
}

// Memoized sweeps so criteria sharing a baseline reuse the same run.
std::map<std::string, double> cache;

double error_at(Family family, StrategyConfig strategy, std::size_t m, unsigned iterations = 4) {
    const std::string key = std::string(to_string(family)) + "|" + strategy.label() + "|" + std::to_string(m) + "|" +
                            std::to_string(iterations);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    auto cfg = base_config(family, strategy);
    cfg.retrieval.max_iterations = iterations;
    cfg.sweep = {m};
    const auto rows = run_sweep(cfg);
    const double e = rows.at(0).overflow ? 1.0 : rows.at(0).error_rate;
    std::printf("       run %-8s %-22s M=%-6zu iter=%u -> error %.4f (%zu trials)%s\n",
                std::string(to_string(family)).c_str(), strategy.label().c_str(), m, iterations, e,
                rows.at(0).trials, rows.at(0).overflow ? " OVERFLOW" : "");
    return cache[key] = e;
}

const StrategyConfig kIdentity{CodecKind::Identity, 0, 0, 0};
StrategyConfig bits(CodecKind k, unsigned b) { return {k, b, 0, 0}; }

Outcome density_law() {
    using big = boost::multiprecision::cpp_bin_float_100;
    const double oracle15000 = static_cast<double>(big(1) - boost::multiprecision::pow(big(1) - big(1) / big(65536), 15000));
    bool ok = std::abs(oracle15000 - 0.2046) <= 5e-5 &&
              std::abs(analytics::expected_density(15000, 256, 256) - oracle15000) <= 1e-12;
    std::string detail = "eq1(15000)=" + fmt("%.6f", analytics::expected_density(15000, 256, 256)) +
                         " oracle=" + fmt("%.6f", oracle15000);
    const auto data = gen_uniform({Family::Uniform, 15000, 8, 256, kSigma, kSeed});
    double worst_z = 0.0;
    for (std::size_t m : {1000, 5000, 15000}) {
        Network net(NetworkTopology::uniform(8, 256));
        for (std::size_t k = 0; k < m; ++k)
            net.store(data[k]);
        const double d = analytics::expected_density(m, 256, 256);
        const double se = std::sqrt(d * (1 - d) / 65536.0);
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t k = i + 1; k < 8; ++k) {
                const double z = std::abs(net.empirical_density(i, k) - d) / se;
                worst_z = std::max(worst_z, z);
                ok &= z <= 3.0;
            }
    }
    return {ok, detail + ", worst pair deviation " + fmt("%.2f", worst_z) + " SE (limit 3) over 3x28 pairs"};
}

Outcome single_round_error() {
    bool ok = true;
    std::string detail;
    for (std::size_t m : {2000, 5000, 10000}) {
        const double emp = error_at(Family::Uniform, kIdentity, m, 1);
        const double th = analytics::single_iteration_error(analytics::expected_density(m, 256, 256), 8, 4, 256);
        ok &= std::abs(emp - th) <= 0.05;
        detail += "M=" + std::to_string(m) + " emp " + fmt("%.4f", emp) + " eq2 " + fmt("%.4f", th) + "; ";
    }
    return {ok, detail + "limit |diff| <= 0.05"};
}

Outcome uniform_anchor() {
    const double e = error_at(Family::Uniform, kIdentity, 15000);
    return {e >= 0.005 && e <= 0.08, "error " + fmt("%.4f", e) + " in [0.005, 0.08] (reference 0.029)"};
}

Outcome gaussian_ordering() {
    const double g = error_at(Family::Gaussian, kIdentity, 2000);
    const double u = error_at(Family::Uniform, kIdentity, 15000);
    return {g > u, "gaussian(M=2000) " + fmt("%.4f", g) + " > uniform(M=15000) " + fmt("%.4f", u)};
}

Outcome parity_anchor() {
    const double p = error_at(Family::Parity, kIdentity, 8000);
    const double u = error_at(Family::Uniform, kIdentity, 15000);
    return {p <= u + 0.02, "parity(M=8000) " + fmt("%.4f", p) + " <= uniform(M=15000) " + fmt("%.4f", u) + " + 0.02"};
}

Outcome material_ratio() {
    const auto equal = analytics::material(NetworkTopology::uniform(8, 1024));
    const auto stamped = analytics::material(NetworkTopology::uniform(8, 256).extended(7, 5000));
    const double r = static_cast<double>(equal) / static_cast<double>(stamped);
    return {std::abs(r - 0.049) <= 0.001,
            std::to_string(equal) + " / " + std::to_string(stamped) + " = " + fmt("%.5f", r) + " (0.049 +- 0.001)"};
}

Outcome comparable_material() {
    const double u = error_at(Family::Uniform, kIdentity, 15000);
    const double raw2000 = error_at(Family::Gaussian, kIdentity, 2000);
    bool ok = true;
    std::string detail;
    for (auto s : {bits(CodecKind::RandomBits, 4), bits(CodecKind::LeastUsedBits, 4), bits(CodecKind::Huffman, 4)}) {
        const double e = error_at(Family::Gaussian, s, 15000);
        ok &= e <= u + 0.02 && e < raw2000;
        detail += s.label() + " " + fmt("%.4f", e) + "; ";
    }
    detail += "limit <= " + fmt("%.4f", u + 0.02) + " and < raw(M=2000) " + fmt("%.4f", raw2000) + "; ";
    const StrategyConfig stamps{CodecKind::RandomClusters, 0, 7, 5000};
    for (std::size_t m : {2000, 5000, 10000, 15000}) {
        const double rc = error_at(Family::Gaussian, stamps, m);
        const double raw = error_at(Family::Gaussian, kIdentity, m);
        ok &= rc < raw;
        detail += "stamps M=" + std::to_string(m) + " " + fmt("%.4f", rc) + " < raw " + fmt("%.4f", raw) + (m == 15000 ? "" : "; ");
    }
    return {ok, detail};
}

Outcome equal_material() {
    const double u = error_at(Family::Uniform, kIdentity, 15000);
    const double rb2 = error_at(Family::Gaussian, bits(CodecKind::RandomBits, 2), 15000);
    const double rb3 = error_at(Family::Gaussian, bits(CodecKind::RandomBits, 3), 15000);
    const double h2 = error_at(Family::Gaussian, bits(CodecKind::Huffman, 2), 15000);
    const bool close = std::abs(rb2 - u) <= 0.05;
    const bool better = rb3 <= u;
    const bool huff = h2 <= rb2;
    return {close && better && huff,
            std::string(close ? "ok" : "VIOLATED") + " random-bits:2 " + fmt("%.4f", rb2) + " within 0.05 of uniform " +
                fmt("%.4f", u) + "; " + (better ? "ok" : "VIOLATED") + " random-bits:3 " + fmt("%.4f", rb3) +
                " <= uniform; " + (huff ? "ok" : "VIOLATED") + " huffman:2 " + fmt("%.4f", h2) + " <= random-bits:2"};
}

Outcome property_suites() {
    std::vector<std::string> broken;
    auto rng = make_rng(99);

    // Perfect recall at M = 1 for every strategy and every erasure count.
    const std::vector<StrategyConfig> all{kIdentity,
                                          {CodecKind::RandomClusters, 0, 7, 5000},
                                          bits(CodecKind::RandomBits, 2),
                                          bits(CodecKind::LeastUsedBits, 2),
                                          bits(CodecKind::Huffman, 2)};
    for (auto f : {Family::Uniform, Family::Gaussian, Family::Parity})
        for (const auto& s : all)
            for (std::size_t ce = 1; ce < 8; ++ce) {
                auto cfg = base_config(f, s);
                cfg.erased = ce;
                cfg.sweep = {1};
                if (run_sweep(cfg).at(0).error_rate != 0.0)
                    broken.push_back("recall@M=1 " + s.label() + " ce=" + std::to_string(ce));
            }

    // Lossless codecs, least-used balance, Huffman prefix-freedom over full datasets.
    for (auto f : {Family::Uniform, Family::Gaussian, Family::Parity}) {
        const auto data = generate({f, 15000, 8, 256, kSigma, kSeed});
        for (const auto& s : all) {
            auto codec = make_codec(s, data, 256, kSeed);
            const auto enc = codec.encode_all(data);
            for (std::size_t k = 0; k < data.size(); ++k)
                if (codec.try_decode(enc[k]) != data[k]) {
                    broken.push_back("lossless " + s.label());
                    break;
                }
            if (auto* lu = codec.get<LeastUsedCodec>(); lu && lu->max_spread() > 1)
                broken.push_back("least-used balance");
            if (auto* h = codec.get<HuffmanCodec>())
                for (const auto& book : h->books)
                    for (const auto& [a, wa] : book.codewords())
                        for (const auto& [b, wb] : book.codewords())
                            if (a != b && wb.compare(0, wa.size(), wa) == 0)
                                broken.push_back("huffman prefix-free");
        }
    }

    // Huffman optimality against exhaustive search.
    for (int t = 0; t < 300; ++t) {
        const auto n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        std::map<Symbol, std::uint64_t> freq;
        std::vector<std::uint64_t> w;
        for (std::size_t i = 0; i < n; ++i) {
            w.push_back(std::uniform_int_distribution<std::uint64_t>(1, 50)(rng));
            freq[static_cast<Symbol>(i)] = w.back();
        }
        const auto book = HuffmanCodebook::build(freq);
        std::uint64_t cost = 0;
        for (const auto& [s, f] : freq)
            cost += f * book.codeword(s)->size();
        if (cost != oracle::exhaustive_optimum(w)) {
            broken.push_back("huffman optimality");
            break;
        }
    }

    // Brute-force single-round equivalence on small networks.
    for (int t = 0; t < 500; ++t) {
        const std::size_t c = 2 + t % 3;
        std::vector<std::size_t> sizes(c);
        for (auto& s : sizes)
            s = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
        const NetworkTopology topo(sizes);
        const auto random_message = [&] {
            Message m(c);
            for (std::size_t i = 0; i < c; ++i)
                m[i] = std::uniform_int_distribution<Symbol>(0, static_cast<Symbol>(sizes[i] - 1))(rng);
            return m;
        };
        Network net(topo);
        std::vector<Message> stored;
        const int count = std::uniform_int_distribution<int>(1, 20)(rng);
        for (int k = 0; k < count; ++k) {
            stored.push_back(random_message());
            net.store(stored.back());
        }
        const auto target = stored[static_cast<std::size_t>(t) % stored.size()];
        std::vector<std::size_t> erased;
        for (std::size_t i = 0; i + 1 < c; ++i)
            if (std::bernoulli_distribution(0.5)(rng))
                erased.push_back(i);
        const auto probe = Probe::erase(target, erased);
        RetrievalConfig one;
        one.max_iterations = 1;
        const auto got = net.retrieve(probe, one);
        const auto want = oracle::brute_force_round(topo, stored, probe);
        for (std::size_t i = 0; i < c; ++i)
            if (got.positions[i].candidates != want[i]) {
                broken.push_back("brute-force equivalence");
                t = 500;
                break;
            }
    }

    // Byte-identical CSV under a fixed seed.
    for (const auto& s : all) {
        auto cfg = base_config(Family::Gaussian, s);
        cfg.sweep = {500, 3000};
        std::ostringstream a, b;
        write_sweep_csv(a, run_sweep(cfg));
        write_sweep_csv(b, run_sweep(cfg));
        if (a.str() != b.str())
            broken.push_back("csv reproducibility " + s.label());
    }

    std::string detail = broken.empty() ? "recall@M=1, lossless, balance, prefix-free, optimality, brute-force, csv: all hold"
                                        : "broken:";
    for (const auto& b : broken)
        detail += " " + b;
    return {broken.empty(), detail};
}

} // namespace

int main() {
    const std::vector<std::tuple<const char*, const char*, std::function<Outcome()>>> criteria{
        {"C1", "density law", density_law},
        {"C2", "single-iteration error vs closed form", single_round_error},
        {"C3", "uniform anchor M=15000", uniform_anchor},
        {"C4", "gaussian ordering", gaussian_ordering},
        {"C5", "parity anchor", parity_anchor},
        {"C6", "material ratio", material_ratio},
        {"C7", "comparable-material ordering", comparable_material},
        {"C8", "equal-material ordering", equal_material},
        {"C9", "property suites", property_suites},
    };
    for (const auto& [id, title, run] : criteria) {
        try {
            report(id, title, run());
        } catch (const std::exception& e) {
            report(id, title, {false, std::string("exception: ") + e.what()});
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
