#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pzf/rng.hpp"
#include "pzf/summary.hpp"

#include <json.hpp>

#include <cmath>

using namespace pzf;

TEST_CASE("resolve start specs") {
    Graph g = Graph::from_spec("grid:5x5");
    CHECK(resolve_start(g, "vertex:7")->to_vector() == std::vector<int>{7});
    CHECK(resolve_start(g, "origin")->to_vector() == std::vector<int>{12});
    CHECK(resolve_start(g, "principal:1")->count() == 9);
    CHECK_FALSE(resolve_start(g, "min-over-vertices").has_value());
    CHECK_THROWS_AS(resolve_start(g, "vertex:99"), std::out_of_range);
    CHECK_THROWS_AS(resolve_start(g, "nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(resolve_start(Graph::from_spec("path:5"), "principal:1"), std::invalid_argument);
}

TEST_CASE("campaign summary and csv round trip") {
    ExperimentConfig config;
    config.graph_spec = "path:5";
    config.start_spec = "vertex:0";
    config.trials = 400;
    config.seed = 99;
    Graph g = Graph::from_spec(config.graph_spec);
    CampaignResult result = run_campaign(g, config);

    REQUIRE(result.records.size() == 400);
    CHECK(result.summary.count == 400);
    CHECK(result.summary.exhausted == 0);
    CHECK(result.summary.min >= 4);  // eccentricity bound
    CHECK(result.summary.min <= result.summary.q5);
    CHECK(result.summary.q5 <= result.summary.q25);
    CHECK(result.summary.q25 <= result.summary.q50);
    CHECK(result.summary.q50 <= result.summary.q75);
    CHECK(result.summary.q75 <= result.summary.q95);
    CHECK(result.summary.q95 <= result.summary.max);

    // summary is recomputable from the emitted flat file
    std::string csv = records_csv(result);
    auto parsed = parse_records_csv(csv);
    REQUIRE(parsed.size() == result.records.size());
    double sum = 0;
    double mn = 1e18, mx = -1e18;
    for (auto [pt, exhausted] : parsed) {
        CHECK_FALSE(exhausted);
        sum += pt;
        mn = std::min(mn, static_cast<double>(pt));
        mx = std::max(mx, static_cast<double>(pt));
    }
    CHECK(sum / static_cast<double>(parsed.size()) == doctest::Approx(result.summary.mean).epsilon(1e-12));
    CHECK(mn == result.summary.min);
    CHECK(mx == result.summary.max);

    // per-round counts survive in the sidecar
    auto counts = nlohmann::json::parse(counts_json(result));
    REQUIRE(counts["blue_counts"].size() == 400);
    CHECK(counts["blue_counts"][0][0] == 1);
}

TEST_CASE("worker count does not change results") {
    ExperimentConfig config;
    config.graph_spec = "grid:4x4";
    config.start_spec = "origin";
    config.trials = 120;
    config.seed = 31415;

    Graph g = Graph::from_spec(config.graph_spec);
    config.workers = 1;
    CampaignResult one = run_campaign(g, config);
    config.workers = 4;
    CampaignResult four = run_campaign(g, config);

    REQUIRE(one.records.size() == four.records.size());
    for (size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].pt == four.records[i].pt);
        CHECK(one.records[i].seed == four.records[i].seed);
        CHECK(one.records[i].blue_counts == four.records[i].blue_counts);
    }
    CHECK(records_csv(one) == records_csv(four));
}

TEST_CASE("min-over-vertices is bounded by any fixed start on the same seeds") {
    ExperimentConfig config;
    config.graph_spec = "cycle:5";
    config.start_spec = "min-over-vertices";
    config.trials = 150;
    config.seed = 777;
    Graph g = Graph::from_spec(config.graph_spec);
    CampaignResult result = run_campaign(g, config);

    for (uint64_t i = 0; i < config.trials; ++i) {
        REQUIRE(result.records[i].finished());
        for (int v = 0; v < g.vertex_count(); ++v) {
            TrialRecord fixed = run(g, BlueSet::of(5, {v}),
                                    derive_seed(config.seed, i, static_cast<uint64_t>(v)));
            CHECK(result.records[i].pt <= fixed.pt);
        }
    }
}

TEST_CASE("normalized ratios appear for the right families") {
    ExperimentConfig config;
    config.trials = 30;
    config.seed = 5;

    config.graph_spec = "hypercube:4";
    config.start_spec = "vertex:0";
    Graph q = Graph::from_spec(config.graph_spec);
    CampaignResult qr = run_campaign(q, config);
    REQUIRE(qr.summary.ratio_pt_over_n.has_value());
    CHECK(*qr.summary.ratio_pt_over_n >= 1.0);
    CHECK_FALSE(qr.summary.ratio_pt_over_halfmn.has_value());

    config.graph_spec = "grid:6x8";
    config.start_spec = "origin";
    Graph g = Graph::from_spec(config.graph_spec);
    CampaignResult gr = run_campaign(g, config);
    REQUIRE(gr.summary.ratio_pt_over_halfmn.has_value());
    CHECK(*gr.summary.ratio_pt_over_halfmn == doctest::Approx(gr.summary.mean / 7.0));

    auto j = nlohmann::json::parse(summary_json(gr));
    CHECK(j["graph"] == "grid:6x8");
    CHECK(j.contains("ratio_pt_over_halfmn"));
    CHECK(j["quantiles"].contains("q50"));
}

TEST_CASE("rounds to half") {
    TrialRecord rec;
    rec.blue_counts = {1, 2, 4, 7, 9};
    CHECK(rounds_to_half(rec, 9) == 3);  // ceil(9/2) = 5 first reached at t=3
    CHECK(rounds_to_half(rec, 20) == -1);
}
