#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pzf/engine.hpp"
#include "pzf/reference_values.hpp"
#include "pzf/rng.hpp"
#include "pzf/verify.hpp"
#include "pzf/window_chain.hpp"

#include <cmath>
#include <map>

using namespace pzf;

namespace {

Rational entry(const TransitionMatrix& m, uint32_t row, uint32_t col) {
    for (const auto& [s, q] : m.exact_rows[row])
        if (s == col) return q;
    return Rational(0);
}

}  // namespace

TEST_CASE("tuple encoding helpers") {
    CHECK(tuple_string({3, 0b001}) == "(1,0,0)");
    CHECK(tuple_string({3, 0b100}) == "(0,0,1)");
    CHECK(reverse_bits(3, 0b001) == 0b100);
    CHECK(reverse_bits(4, 0b0011) == 0b1100);
    // lexicographic rank order for d=2: (0,0),(0,1),(1,0),(1,1)
    CHECK(state_at_lex_rank(2, 0) == 0b00);
    CHECK(state_at_lex_rank(2, 1) == 0b10);
    CHECK(state_at_lex_rank(2, 2) == 0b01);
    CHECK(state_at_lex_rank(2, 3) == 0b11);
}

TEST_CASE("frontier probabilities") {
    auto both = frontier_probs({2, 0b11});
    REQUIRE(both.size() == 3);
    CHECK(both[0] == make_rational(3, 4));
    CHECK(both[1] == make_rational(15, 16));
    CHECK(both[2] == make_rational(3, 4));

    // (0,1): position 0 white, position 1 blue
    auto right = frontier_probs({2, 0b10});
    CHECK(right[0] == 0);
    CHECK(right[1] == make_rational(3, 4));
    CHECK(right[2] == make_rational(3, 4));

    auto full3 = frontier_probs({3, 0b111});
    CHECK(full3[0] == make_rational(3, 4));
    CHECK(full3[1] == make_rational(15, 16));
    CHECK(full3[2] == make_rational(15, 16));
    CHECK(full3[3] == make_rational(3, 4));

    CHECK_THROWS_AS(frontier_probs({3, 0}), std::invalid_argument);
}

TEST_CASE("transition rows") {
    // all-blue d=2 row, exactly the reference values
    auto row = transition_row({2, 0b11});
    std::map<uint32_t, Rational> by_state;
    for (const auto& [c, q] : row) by_state[c.bits] = q;
    CHECK(by_state[0b00] == make_rational(1, 256));
    CHECK(by_state[0b01] == make_rational(15, 256));
    CHECK(by_state[0b10] == make_rational(15, 256));
    CHECK(by_state[0b11] == make_rational(225, 256));

    // reset rows
    auto r2 = transition_row({2, 0});
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].first.bits == 0b11);
    CHECK(r2[0].second == 1);

    auto r3 = transition_row({3, 0});
    REQUIRE(r3.size() == 1);
    CHECK(r3[0].first.bits == 0b111);
    CHECK(r3[0].second == 1);

    auto r4 = transition_row({4, 0});
    REQUIRE(r4.size() == 2);
    CHECK(r4[0].first.bits == 0b0111);
    CHECK(r4[0].second == make_rational(1, 2));
    CHECK(r4[1].first.bits == 0b1110);
    CHECK(r4[1].second == make_rational(1, 2));

    auto r5 = transition_row({5, 0});
    REQUIRE(r5.size() == 1);
    CHECK(r5[0].first.bits == 0b01110);
}

TEST_CASE("matrix invariants for small d") {
    for (int d = 2; d <= 6; ++d) {
        TransitionMatrix m = build_matrix(d, ChainMode::exact);
        REQUIRE(m.states() == (uint32_t{1} << d));
        for (uint32_t c = 0; c < m.states(); ++c) {
            Rational sum(0);
            for (const auto& [s, q] : m.exact_rows[c]) {
                CHECK(q > 0);
                sum += q;
            }
            CHECK(sum == 1);
        }
        // the reset row never keeps the all-white state
        CHECK(entry(m, 0, 0) == 0);
        // mirror symmetry away from the reset row
        for (uint32_t c = 1; c < m.states(); ++c)
            for (uint32_t s = 0; s < m.states(); ++s)
                CHECK(entry(m, c, s) == entry(m, reverse_bits(d, c), reverse_bits(d, s)));
    }
}

TEST_CASE("reference d=2 matrix and the negative control") {
    CheckResult ok = check_window_matrix_d2(reference::kWindowMatrixD2);
    CHECK(ok.pass);

    auto perturbed = reference::kWindowMatrixD2;
    perturbed[1][2] = "1/32";  // row (0,1) col (1,0) is really 3/32
    CheckResult bad = check_window_matrix_d2(perturbed);
    CHECK_FALSE(bad.pass);
    CHECK(bad.detail.find("(0,1)") != std::string::npos);
    CHECK(bad.detail.find("(1,0)") != std::string::npos);
    CHECK(bad.detail.find("1/32") != std::string::npos);
    CHECK(bad.detail.find("3/32") != std::string::npos);
}

TEST_CASE("mode caps") {
    CHECK_THROWS_AS(build_matrix(1, ChainMode::exact), std::invalid_argument);
    CHECK_THROWS_AS(build_matrix(9, ChainMode::exact), CapExceededError);
    CHECK_THROWS_AS(build_matrix(17, ChainMode::floating), CapExceededError);
    ChainLimits wide;
    wide.exact_cap = 9;
    CHECK(build_matrix(9, ChainMode::exact, wide).states() == 512);
    CHECK_THROWS_AS(sample_chain(1, 10, 1), CapExceededError);
}

TEST_CASE("exact stationary distribution") {
    TransitionMatrix m2 = build_matrix(2, ChainMode::exact);
    StationaryDist d2 = stationary(m2);
    CHECK(d2.mu == make_rational(1, 77));
    CHECK(d2.epsilon == make_rational(1, 75));
    CHECK(d2.pi_exact[0b11] == make_rational(64, 77));

    TransitionMatrix m3 = build_matrix(3, ChainMode::exact);
    StationaryDist d3 = stationary(m3);
    CHECK(d3.mu == parse_fraction("1861/491117"));
    CHECK(d3.epsilon == parse_fraction("1861/487395"));

    // pi inherits the mirror symmetry
    TransitionMatrix m4 = build_matrix(4, ChainMode::exact);
    StationaryDist d4 = stationary(m4);
    Rational total(0);
    for (uint32_t c = 0; c < m4.states(); ++c) {
        CHECK(d4.pi_exact[c] == d4.pi_exact[reverse_bits(4, c)]);
        CHECK(d4.pi_exact[c] > 0);
        total += d4.pi_exact[c];
    }
    CHECK(total == 1);
}

TEST_CASE("stationary rejects a non-ergodic matrix") {
    TransitionMatrix id;
    id.d = 2;
    id.mode = ChainMode::exact;
    id.exact_rows.resize(4);
    for (uint32_t c = 0; c < 4; ++c) id.exact_rows[c] = {{c, Rational(1)}};
    CHECK_THROWS_AS(stationary(id), std::runtime_error);
}

TEST_CASE("float solvers agree with the exact fractions") {
    for (int d = 2; d <= 6; ++d) {
        TransitionMatrix exact = build_matrix(d, ChainMode::exact);
        double mu_ref = to_double(stationary(exact).mu);

        TransitionMatrix f = build_matrix(d, ChainMode::floating);
        for (uint32_t c = 0; c < f.states(); ++c) {
            double sum = 0;
            for (uint64_t k = f.row_ptr[c]; k < f.row_ptr[c + 1]; ++k) sum += f.val[k];
            CHECK(std::fabs(sum - 1.0) < 1e-14);
        }

        StationaryDist dense = stationary(f);  // GTH path
        CHECK(std::fabs(dense.mu_f - mu_ref) / mu_ref < 1e-12);

        StationaryOptions power;
        power.dense_solve_cap_d = 0;  // force the power-iteration path
        StationaryDist pw = stationary(f, power);
        CHECK(pw.iterations > 0);
        CHECK(std::fabs(pw.mu_f - mu_ref) / mu_ref < 1e-9);
    }
}

TEST_CASE("mu decreases with d and never exceeds 1/77") {
    double prev = 1.0;
    for (int d = 2; d <= 10; ++d) {
        StationaryDist dist = stationary(build_matrix(d, ChainMode::floating));
        CHECK(dist.mu_f < prev);
        CHECK(dist.mu_f <= 1.0 / 77.0 + 1e-15);
        prev = dist.mu_f;
    }
}

TEST_CASE("float stationary residual stays below 1e-12") {
    TransitionMatrix m = build_matrix(8, ChainMode::floating);
    auto residual_sup = [&](const std::vector<double>& pi) {
        std::vector<double> image(m.states(), 0.0);
        for (uint32_t c = 0; c < m.states(); ++c)
            for (uint64_t k = m.row_ptr[c]; k < m.row_ptr[c + 1]; ++k)
                image[m.col[k]] += pi[c] * m.val[k];
        double sup = 0;
        for (uint32_t c = 0; c < m.states(); ++c) sup = std::max(sup, std::fabs(image[c] - pi[c]));
        return sup;
    };
    CHECK(residual_sup(stationary(m).pi_float) < 1e-12);  // GTH path
    StationaryOptions power;
    power.dense_solve_cap_d = 0;
    CHECK(residual_sup(stationary(m, power).pi_float) < 1e-12);
}

TEST_CASE("chain sampling bookkeeping") {
    ChainSampleReport rep = sample_chain(4, 20000, 42);
    CHECK(rep.elapsed_time + rep.all_white_visits == rep.steps);
    CHECK(rep.net_distance ==
          static_cast<int64_t>(rep.steps) - 2 * static_cast<int64_t>(rep.all_white_visits));
    uint64_t visits = 0;
    for (uint64_t c : rep.state_counts) visits += c;
    CHECK(visits == rep.steps);
    // even d: reset recentring plus the half-window offset stays within d+1
    CHECK(rep.reset_delta_max_abs <= 5);

    // replay
    ChainSampleReport again = sample_chain(4, 20000, 42);
    CHECK(again.state_counts == rep.state_counts);
    CHECK(again.disc_final == rep.disc_final);

    // odd d: reset jump bounded by d
    ChainSampleReport odd = sample_chain(3, 100000, 7);
    CHECK(odd.reset_delta_max_abs <= 3);
    CHECK(odd.all_white_visits > 0);

    CHECK_THROWS_AS(sample_chain(3, 0, 1), std::invalid_argument);
}

TEST_CASE("chain sampling matches the stationary distribution") {
    const uint64_t steps = 1000000;
    ChainSampleReport rep = sample_chain(2, steps, 0xcafe);
    double mu2 = 1.0 / 77.0;
    double freq = static_cast<double>(rep.all_white_visits) / static_cast<double>(steps);
    double sigma = std::sqrt(mu2 * (1 - mu2) / static_cast<double>(steps));
    CHECK(std::fabs(freq - mu2) <= 3 * sigma);

    // discrepancy increments are mean zero by mirror symmetry
    CHECK(std::fabs(rep.mean_disc_increment()) <= 3 * rep.disc_increment_stderr());
}

TEST_CASE("frontier probabilities cross-validated on an actual grid") {
    // Blue window on an anti-diagonal, each blue window vertex given blue
    // left and below supports, one engine step against the closed form.
    const uint64_t trials = 200000;
    struct Case {
        int d;
        uint32_t bits;
    };
    for (Case cs : {Case{2, 0b11u}, Case{3, 0b101u}, Case{4, 0b1011u}}) {
        int d = cs.d;
        int n = d + 6;
        Graph g = Graph::from_spec("grid:" + std::to_string(n) + "x" + std::to_string(n));
        auto id = [n](int r, int c) { return r * n + c; };
        const int r0 = 2, c0 = 2;  // window position i at (r0+i, c0+i)

        std::vector<int> blue;
        for (int i = 0; i < d; ++i) {
            if (!((cs.bits >> i) & 1)) continue;
            blue.push_back(id(r0 + i, c0 + i));
            blue.push_back(id(r0 + i, c0 + i - 1));  // left support
            blue.push_back(id(r0 + i + 1, c0 + i));  // below support
        }
        std::sort(blue.begin(), blue.end());
        blue.erase(std::unique(blue.begin(), blue.end()), blue.end());
        BlueSet start = BlueSet::of(n * n, blue);

        auto probs = frontier_probs({d, cs.bits});
        std::vector<uint64_t> hits(static_cast<size_t>(d) + 1, 0);
        for (uint64_t t = 0; t < trials; ++t) {
            EdgeRandomSource rnd(derive_seed(0xf207 + static_cast<uint64_t>(d), t));
            BlueSet next = step(g, start, rnd, 1);
            for (int i = 0; i <= d; ++i)
                if (next.test(id(r0 + i - 1, c0 + i))) hits[static_cast<size_t>(i)]++;
        }
        for (int i = 0; i <= d; ++i) {
            double p = to_double(probs[static_cast<size_t>(i)]);
            double freq = static_cast<double>(hits[static_cast<size_t>(i)]) / trials;
            if (p == 0.0) {
                CHECK(hits[static_cast<size_t>(i)] == 0);
            } else {
                double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
                CHECK(std::fabs(freq - p) <= 5 * sigma);
            }
        }
    }
}
