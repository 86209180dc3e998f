#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cliquenet/harness.hpp"

using namespace cliquenet;

namespace {

ExperimentConfig small_config(Family f, StrategyConfig s) {
    ExperimentConfig cfg;
    cfg.dataset = {f, 1, 6, 64, 6.0, 5};
    cfg.strategy = s;
    cfg.erased = 3;
    cfg.probes = 300;
    cfg.seed = 5;
    return cfg;
}

std::vector<StrategyConfig> strategies() {
    return {
        {CodecKind::Identity, 0, 0, 0},
        {CodecKind::RandomClusters, 0, 2, 100},
        {CodecKind::RandomBits, 2, 0, 0},
        {CodecKind::LeastUsedBits, 2, 0, 0},
        {CodecKind::Huffman, 3, 0, 0},
    };
}

} // namespace

TEST(Harness, BaseBits) {
    EXPECT_EQ(base_bits_for(256), 8u);
    EXPECT_EQ(base_bits_for(255), 8u);
    EXPECT_EQ(base_bits_for(257), 9u);
    EXPECT_EQ(base_bits_for(1), 0u);
}

TEST(Harness, StrategyLabelsAndScopes) {
    EXPECT_EQ((StrategyConfig{CodecKind::RandomClusters, 0, 7, 5000}).label(), "random-clusters:7x5000");
    EXPECT_EQ((StrategyConfig{CodecKind::Huffman, 2, 0, 0}).label(), "huffman:2");
    EXPECT_EQ((StrategyConfig{CodecKind::RandomClusters, 0, 7, 5000}).default_scope(),
              ErasureScope::OriginalPositions);
    EXPECT_EQ((StrategyConfig{CodecKind::LeastUsedBits, 2, 0, 0}).default_scope(), ErasureScope::AllPositions);
}

TEST(Harness, SingleMessageNeverFails) {
    for (auto f : {Family::Uniform, Family::Gaussian, Family::Parity})
        for (const auto& s : strategies())
            for (std::size_t ce = 1; ce < 6; ++ce) {
                auto cfg = small_config(f, s);
                cfg.erased = ce;
                cfg.sweep = {1};
                const auto rows = run_sweep(cfg);
                ASSERT_EQ(rows.size(), 1u);
                EXPECT_EQ(rows[0].trials, 1u);
                EXPECT_EQ(rows[0].error_rate, 0.0) << s.label() << " ce=" << ce;
            }
}

TEST(Harness, SaturatedNetworkAlwaysFails) {
    auto cfg = small_config(Family::Uniform, {});
    cfg.dataset.base = 4;
    cfg.erased = 2;
    cfg.sweep = {3000};
    const auto rows = run_sweep(cfg);
    EXPECT_GT(rows[0].density_emp, 0.999);
    EXPECT_GT(rows[0].error_rate, 0.9);
}

TEST(Harness, SingleRoundTracksClosedForm) {
    auto cfg = small_config(Family::Uniform, {});
    cfg.dataset.positions = 8;
    cfg.dataset.base = 256;
    cfg.erased = 4;
    cfg.retrieval.max_iterations = 1;
    cfg.probes = 1000;
    cfg.sweep = {1000, 3000};
    for (const auto& row : run_sweep(cfg)) {
        ASSERT_LE(row.density_eq1, 0.25);
        EXPECT_NEAR(row.error_rate, row.pe_eq2, 0.05) << "M=" << row.messages;
    }
}

TEST(Harness, RowsSortedWithTheoryColumns) {
    auto cfg = small_config(Family::Gaussian, {CodecKind::RandomBits, 2, 0, 0});
    cfg.sweep = {300, 50, 300, 120};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].messages, 50u);
    EXPECT_EQ(rows[2].messages, 300u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.trials, std::min<std::size_t>(300, r.messages));
        EXPECT_DOUBLE_EQ(r.density_eq1, analytics::expected_density(r.messages, 256, 256));
        EXPECT_DOUBLE_EQ(r.pe_eq2, analytics::single_iteration_error(r.density_eq1, 6, 3, 256));
        EXPECT_NEAR(r.stderr_, std::sqrt(r.error_rate * (1 - r.error_rate) / r.trials), 1e-15);
    }
}

TEST(Harness, CsvIsReproducible) {
    for (const auto& s : strategies()) {
        auto cfg = small_config(Family::Gaussian, s);
        cfg.sweep = {100, 400};
        std::ostringstream a, b;
        write_sweep_csv(a, run_sweep(cfg));
        write_sweep_csv(b, run_sweep(cfg));
        EXPECT_EQ(a.str(), b.str());
        EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
                  "strategy,M,trials,error_rate,stderr,density_emp,density_eq1,pe_eq2,seed");
    }
}

TEST(Harness, HuffmanOverflowFlagsRowAndContinues) {
    // Two positions with many symbols and no extra bits: codes exceed 2 * 6 bits.
    auto cfg = small_config(Family::Uniform, {CodecKind::Huffman, 0, 0, 0});
    cfg.dataset.positions = 2;
    cfg.erased = 1;
    cfg.sweep = {1, 500};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_FALSE(rows[0].overflow);
    EXPECT_TRUE(rows[1].overflow);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    EXPECT_NE(csv.str().find("huffman:0,500,0,OVERFLOW,,,"), std::string::npos);
}

TEST(Harness, RejectsInconsistentConfig) {
    auto cfg = small_config(Family::Uniform, {});
    cfg.sweep = {};
    EXPECT_THROW(run_sweep(cfg), InvalidArgument);
    cfg.sweep = {10};
    cfg.erased = 6;
    EXPECT_THROW(run_sweep(cfg), InvalidArgument);
    cfg.erased = 0;
    EXPECT_THROW(run_sweep(cfg), InvalidArgument);
    cfg.erased = 2;
    cfg.probes = 0;
    EXPECT_THROW(run_sweep(cfg), InvalidArgument);

    // Original-position scope with stamps: at most 5 of the 6 originals.
    auto rc = small_config(Family::Uniform, {CodecKind::RandomClusters, 0, 3, 50});
    rc.sweep = {10};
    rc.erased = 6;
    EXPECT_THROW(run_sweep(rc), InvalidArgument);
    rc.scope = ErasureScope::AllPositions;
    EXPECT_NO_THROW(run_sweep(rc));

    Network net(NetworkTopology::uniform(6, 64));
    Codec id(IdentityCodec{});
    const Dataset originals{{1, 2, 3, 4, 5, 6}};
    const Dataset wrong{{1, 2, 3}};
    EXPECT_THROW(evaluate_error_rate(net, id, originals, wrong, cfg, 0), InvalidArgument);
}

TEST(Harness, EvaluateCountsDecodeFailures) {
    // Recall of the stored form is perfect, but it decodes to something other
    // than the original, which must still count as an error.
    auto cfg = small_config(Family::Uniform, {});
    cfg.erased = 1;
    Network net(NetworkTopology::uniform(6, 64));
    const Dataset stored{{1, 2, 3, 4, 5, 6}};
    net.store(stored[0]);
    const Dataset originals{{1, 2, 3, 4, 5, 7}};
    const auto est = evaluate_error_rate(net, Codec(IdentityCodec{}), originals, stored, cfg, 0);
    EXPECT_EQ(est.trials, 1u);
    EXPECT_EQ(est.errors, 1u);
}

TEST(Harness, FormatDoubleRoundTrips) {
    for (double v : {0.0, 0.029, 1.0 / 3.0, 0.20457887069510503, 1e-300})
        EXPECT_EQ(std::stod(format_double(v)), v);
    EXPECT_EQ(format_double(0.5), "0.5");
}
