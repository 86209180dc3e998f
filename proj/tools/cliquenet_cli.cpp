// Command line driver: dataset generation, closed-form curves, erasure
// sweeps, single-shot store/query and topology accounting.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cliquenet/cliquenet.hpp"

namespace cn = cliquenet;

namespace {

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw cn::InvalidArgument("not a count: '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty())
        throw cn::InvalidArgument("empty list: '" + text + "'");
    return out;
}

// "8x256,7x5000" or "256,256,512"
cn::NetworkTopology parse_clusters(const std::string& text) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos) {
            sizes.push_back(parse_list(item).front());
        } else {
            const auto count = parse_list(item.substr(0, x)).front();
            const auto size = parse_list(item.substr(x + 1)).front();
            sizes.insert(sizes.end(), count, size);
        }
    }
    return cn::NetworkTopology(std::move(sizes));
}

struct StrategyFlags {
    std::string name = "identity";
    unsigned bits = 0;
    std::string random_clusters = "7:5000";

    void attach(CLI::App* cmd) {
        cmd->add_option("--strategy", name, "identity|random-clusters|random-bits|least-used|huffman")
            ->capture_default_str();
        cmd->add_option("--bits", bits, "extra bits per symbol (bit extension, huffman)")->capture_default_str();
        cmd->add_option("--random-clusters", random_clusters, "r:size for the random-clusters strategy")
            ->capture_default_str();
    }

    cn::StrategyConfig resolve() const {
        cn::StrategyConfig s;
        s.bits = bits;
        if (name == "identity") {
            s.kind = cn::CodecKind::Identity;
        } else if (name == "random-clusters") {
            s.kind = cn::CodecKind::RandomClusters;
            const auto colon = random_clusters.find(':');
            if (colon == std::string::npos)
                throw cn::InvalidArgument("--random-clusters expects r:size");
            s.random_count = parse_list(random_clusters.substr(0, colon)).front();
            s.random_size = parse_list(random_clusters.substr(colon + 1)).front();
        } else if (name == "random-bits") {
            s.kind = cn::CodecKind::RandomBits;
        } else if (name == "least-used") {
            s.kind = cn::CodecKind::LeastUsedBits;
        } else if (name == "huffman") {
            s.kind = cn::CodecKind::Huffman;
        } else {
            throw cn::InvalidArgument("unknown strategy: " + name);
        }
        return s;
    }
};

struct RetrievalFlags {
    unsigned iterations = 4;
    unsigned gamma = 0;
    bool no_clamp = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--iterations", iterations, "maximum message passing rounds")->capture_default_str();
        cmd->add_option("--gamma", gamma, "self-excitation weight")->capture_default_str();
        cmd->add_flag("--no-clamp", no_clamp, "let known clusters change during decoding");
    }

    cn::RetrievalConfig resolve() const {
        cn::RetrievalConfig r;
        r.max_iterations = iterations;
        r.memory_weight = gamma;
        r.clamp_known = !no_clamp;
        r.validate();
        return r;
    }
};

template <class F>
void with_output(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw cn::InvalidArgument("cannot open " + path + " for writing");
    write(out);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw cn::InvalidArgument("cannot open " + path);
    return in;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Associative memory built from neural cliques"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a dataset file");
    std::string family = "uniform", out_path;
    std::size_t count = 1000, positions = 8, base = 256;
    double sigma = 16.0;
    std::uint64_t seed = 1;
    gen->add_option("--family", family, "uniform|gaussian|parity")->capture_default_str();
    gen->add_option("--count,-M", count, "number of messages")->capture_default_str();
    gen->add_option("--positions,-c", positions, "message length")->capture_default_str();
    gen->add_option("--base", base, "symbol range")->capture_default_str();
    gen->add_option("--sigma", sigma, "gaussian standard deviation")->capture_default_str();
    gen->add_option("--seed", seed)->capture_default_str();
    gen->add_option("--out", out_path, "output file (default stdout)");

    // theory
    auto* theory = app.add_subcommand("theory", "expected density and single round error, as CSV");
    std::size_t clusters = 8, cluster_size = 256, erased = 4;
    std::string sweep_text = "1000,2000,5000,10000,15000";
    theory->add_option("--clusters,-c", clusters)->capture_default_str();
    theory->add_option("--size,-l", cluster_size)->capture_default_str();
    theory->add_option("--ce", erased, "erased positions")->capture_default_str();
    theory->add_option("--sweep", sweep_text, "comma separated message counts")->capture_default_str();
    theory->add_option("--out", out_path);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "erasure retrieval experiment, as CSV");
    StrategyFlags strategy;
    RetrievalFlags retrieval;
    std::size_t probes = 2000;
    std::string scope;
    sweep->add_option("--family", family)->capture_default_str();
    sweep->add_option("--positions,-c", positions)->capture_default_str();
    sweep->add_option("--base", base)->capture_default_str();
    sweep->add_option("--sigma", sigma)->capture_default_str();
    strategy.attach(sweep);
    retrieval.attach(sweep);
    sweep->add_option("--ce", erased)->capture_default_str();
    sweep->add_option("--probes", probes, "probes per point (capped at M)")->capture_default_str();
    sweep->add_option("--scope", scope, "original|all (default depends on strategy)");
    sweep->add_option("--seed", seed)->capture_default_str();
    sweep->add_option("--sweep", sweep_text)->capture_default_str();
    sweep->add_option("--out", out_path);

    // store
    auto* store = app.add_subcommand("store", "encode a dataset file and store it into a network file");
    std::string in_path, codec_path;
    store->add_option("--in", in_path, "dataset file")->required();
    strategy.attach(store);
    store->add_option("--seed", seed)->capture_default_str();
    store->add_option("--out", out_path, "network file")->required();
    store->add_option("--codec-out", codec_path, "codec file");

    // query
    auto* query = app.add_subcommand("query", "retrieve from a stored network");
    std::string network_path, probe_text;
    query->add_option("--network", network_path)->required();
    query->add_option("--probe", probe_text, "symbols separated by spaces, '*' for erased")->required();
    query->add_option("--codec", codec_path, "codec file used to decode a complete result");
    retrieval.attach(query);

    // material
    auto* material = app.add_subcommand("material", "number of possible connections of a topology");
    std::string layout;
    material->add_option("--clusters", layout, "e.g. 8x256,7x5000")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            cn::DatasetSpec spec{cn::parse_family(family), count, positions, base, sigma, seed};
            const auto data = cn::generate(spec);
            with_output(out_path, [&](std::ostream& out) { cn::write_dataset(out, data, positions, base); });
        } else if (*theory) {
            std::vector<std::uint64_t> ms;
            for (auto m : parse_list(sweep_text))
                ms.push_back(m);
            const auto points = cn::analytics::theory_curve(ms, clusters, cluster_size, erased);
            with_output(out_path, [&](std::ostream& out) { cn::write_theory_csv(out, points); });
        } else if (*sweep) {
            cn::ExperimentConfig cfg;
            cfg.dataset = {cn::parse_family(family), 1, positions, base, sigma, seed};
            cfg.strategy = strategy.resolve();
            cfg.erased = erased;
            cfg.probes = probes;
            cfg.sweep = parse_list(sweep_text);
            cfg.retrieval = retrieval.resolve();
            cfg.seed = seed;
            if (scope == "original")
                cfg.scope = cn::ErasureScope::OriginalPositions;
            else if (scope == "all")
                cfg.scope = cn::ErasureScope::AllPositions;
            else if (!scope.empty())
                throw cn::InvalidArgument("--scope must be original or all");
            const auto rows = cn::run_sweep(cfg);
            with_output(out_path, [&](std::ostream& out) { cn::write_sweep_csv(out, rows); });
        } else if (*store) {
            auto in = open_input(in_path);
            const auto loaded = cn::read_dataset(in);
            if (loaded.messages.empty())
                throw cn::InvalidArgument("dataset is empty");
            auto codec = cn::make_codec(strategy.resolve(), loaded.messages, loaded.base, seed);
            cn::Network net(codec.output_topology(cn::NetworkTopology::uniform(loaded.positions, loaded.base)));
            for (const auto& a : codec.encode_all(loaded.messages))
                net.store(a);
            with_output(out_path, [&](std::ostream& out) { net.save(out); });
            if (!codec_path.empty())
                with_output(codec_path, [&](std::ostream& out) { codec.save(out); });
            std::cerr << "stored " << loaded.messages.size() << " messages, density "
                      << cn::format_double(net.global_density()) << '\n';
        } else if (*query) {
            auto in = open_input(network_path);
            const auto net = cn::Network::load(in);
            std::vector<std::optional<cn::Symbol>> entries;
            std::istringstream ps(probe_text);
            std::string tok;
            while (ps >> tok) {
                if (tok == "*" || tok == "_")
                    entries.emplace_back();
                else
                    entries.emplace_back(static_cast<cn::Symbol>(parse_list(tok).front()));
            }
            const auto result = net.retrieve(cn::Probe(std::move(entries)), retrieval.resolve());
            for (std::size_t i = 0; i < result.positions.size(); ++i) {
                const auto& p = result.positions[i];
                std::cout << i << ' '
                          << (p.kind == cn::PositionOutcome::Kind::Unique      ? "UNIQUE"
                              : p.kind == cn::PositionOutcome::Kind::Ambiguous ? "AMBIGUOUS"
                                                                               : "EMPTY");
                for (auto s : p.candidates)
                    std::cout << ' ' << s;
                std::cout << '\n';
            }
            std::cout << "iterations " << result.iterations << '\n';
            if (!codec_path.empty()) {
                auto cin = open_input(codec_path);
                const auto codec = cn::Codec::load(cin);
                const auto m = result.message();
                if (!m)
                    throw cn::DecodeError("retrieval left ambiguous or empty clusters");
                const auto decoded = codec.decode(*m);
                std::cout << "decoded";
                for (auto s : decoded)
                    std::cout << ' ' << s;
                std::cout << '\n';
            }
        } else if (*material) {
            std::cout << cn::analytics::material(parse_clusters(layout)) << '\n';
        }
    } catch (const cn::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
