#include "pzf/verify.hpp"

#include "pzf/exact_ept.hpp"
#include "pzf/rng.hpp"
#include "pzf/window_chain.hpp"

#include <cmath>
#include <sstream>

namespace pzf {

namespace {

CheckResult pass_check(std::string name, std::string detail = "ok") {
    return CheckResult{std::move(name), true, std::move(detail)};
}

CheckResult fail_check(std::string name, std::string detail) {
    return CheckResult{std::move(name), false, std::move(detail)};
}

std::string rel_err_str(double expected, double actual) {
    std::ostringstream out;
    out.precision(17);
    out << "expected " << expected << ", got " << actual;
    return out.str();
}

BlueSet random_subset_within(const BlueSet& universe_set, int n, uint64_t seed, uint64_t trial,
                             uint64_t tag) {
    BlueSet s(n);
    universe_set.for_each([&](int v) {
        if (keyed_bits(seed, trial, static_cast<uint64_t>(v), tag) >> 63) s.set(v);
    });
    if (s.empty()) {
        // fall back to one deterministic member so starts stay nonempty
        int pick = static_cast<int>(keyed_bits(seed, trial, 0, tag ^ 0xff) %
                                    static_cast<uint64_t>(universe_set.count()));
        s.set(universe_set.to_vector()[static_cast<size_t>(pick)]);
    }
    return s;
}

}  // namespace

CheckResult check_window_matrix_d2(const std::array<std::array<std::string_view, 4>, 4>& fixture) {
    TransitionMatrix m = build_matrix(2, ChainMode::exact);
    for (uint32_t rrank = 0; rrank < 4; ++rrank) {
        uint32_t rstate = state_at_lex_rank(2, rrank);
        for (uint32_t crank = 0; crank < 4; ++crank) {
            uint32_t cstate = state_at_lex_rank(2, crank);
            Rational expected = parse_fraction(std::string(fixture[rrank][crank]));
            Rational actual(0);
            for (const auto& [s, q] : m.exact_rows[rstate])
                if (s == cstate) actual = q;
            if (actual != expected) {
                return fail_check("window matrix d=2",
                                  "entry row " + tuple_string({2, rstate}) + " col " +
                                      tuple_string({2, cstate}) + ": expected " +
                                      fraction_string(expected) + ", got " + fraction_string(actual));
            }
        }
    }
    return pass_check("window matrix d=2", "all 16 entries match");
}

bool deterministic_domination_holds(const Graph& g, const BlueSet& start, uint64_t seed,
                                    int max_rounds) {
    max_rounds = resolve_max_rounds(g, max_rounds);
    EdgeRandomSource rnd(seed);
    BlueSet prob = start, det = start;
    bool det_moving = true;
    for (int t = 1; t <= max_rounds; ++t) {
        prob = step(g, prob, rnd, static_cast<uint64_t>(t));
        if (det_moving) {
            BlueSet next = zf_step(g, det);
            det_moving = next.count() > det.count();
            det = next;
        }
        if (!det.is_subset_of(prob)) return false;
        if (prob.full()) return true;
    }
    return true;  // exhausted without a violation
}

CouplingBatteryResult coupling_battery(const Graph& g, uint64_t trials, uint64_t seed,
                                       int max_rounds) {
    CouplingBatteryResult out;
    out.trials = trials;
    const int n = g.vertex_count();
    const BlueSet everything = BlueSet::all(n);
    for (uint64_t i = 0; i < trials; ++i) {
        BlueSet s2 = random_subset_within(everything, n, seed, i, 0xa);
        BlueSet s1 = random_subset_within(s2, n, seed, i, 0xb);
        CoupledRecord rec = coupled_run(g, s1, s2, derive_seed(seed, i), max_rounds);
        if (!rec.contained_every_round) out.containment_violations++;
        if (!deterministic_domination_holds(g, s1, derive_seed(seed, i, 0xd0), max_rounds))
            out.domination_violations++;
    }
    return out;
}

VerifyReport run_verify(const VerifyOptions& opts) {
    VerifyReport report;

    report.checks.push_back(check_window_matrix_d2(reference::kWindowMatrixD2));

    // Exact stationary fractions, d = 2..7.
    for (int d = 2; d <= 7; ++d) {
        std::string name = "mu_" + std::to_string(d) + " exact";
        try {
            TransitionMatrix m = build_matrix(d, ChainMode::exact, {}, opts.workers);
            StationaryDist dist = stationary(m);
            Rational expected = parse_fraction(std::string(reference::kMuExact[d - 2]));
            if (dist.mu != expected) {
                report.checks.push_back(fail_check(
                    name, "expected " + fraction_string(expected) + ", got " + fraction_string(dist.mu)));
                continue;
            }
            report.checks.push_back(pass_check(name, fraction_string(dist.mu)));
            if (d == 2 || d == 3) {
                Rational eps_expected =
                    parse_fraction(std::string(d == 2 ? reference::kEps2 : reference::kEps3));
                std::string ename = "eps_" + std::to_string(d) + " exact";
                if (dist.epsilon != eps_expected)
                    report.checks.push_back(fail_check(ename, "expected " + fraction_string(eps_expected) +
                                                                  ", got " + fraction_string(dist.epsilon)));
                else report.checks.push_back(pass_check(ename, fraction_string(dist.epsilon)));
            }
        } catch (const std::exception& e) {
            report.checks.push_back(fail_check(name, e.what()));
        }
    }

    // Structural invariants on the exact matrices: rows sum to 1, the mirror
    // symmetry P(C,C') = P(rev C, rev C') away from the reset row, and the
    // reset row never stays all-white.
    for (int d = 2; d <= 6; ++d) {
        std::string name = "matrix invariants d=" + std::to_string(d);
        try {
            TransitionMatrix m = build_matrix(d, ChainMode::exact, {}, opts.workers);
            std::string problem;
            for (uint32_t c = 0; c < m.states() && problem.empty(); ++c) {
                Rational sum(0);
                for (const auto& [s, q] : m.exact_rows[c]) {
                    sum += q;
                    if (c == 0 && s == 0 && q != 0) problem = "reset row keeps all-white mass";
                }
                if (sum != 1) problem = "row " + tuple_string({d, c}) + " sums to " + fraction_string(sum);
            }
            auto entry = [&](uint32_t c, uint32_t s) {
                for (const auto& [t, q] : m.exact_rows[c])
                    if (t == s) return q;
                return Rational(0);
            };
            for (uint32_t c = 1; c < m.states() && problem.empty(); ++c) {
                uint32_t rc = reverse_bits(d, c);
                for (uint32_t s = 0; s < m.states(); ++s) {
                    if (entry(c, s) != entry(rc, reverse_bits(d, s))) {
                        problem = "mirror symmetry broken at row " + tuple_string({d, c}) + " col " +
                                  tuple_string({d, s});
                        break;
                    }
                }
            }
            if (problem.empty()) report.checks.push_back(pass_check(name));
            else report.checks.push_back(fail_check(name, problem));
        } catch (const std::exception& e) {
            report.checks.push_back(fail_check(name, e.what()));
        }
    }

    // Closed-form optimal expected propagation times on paths and cycles.
    for (int n = 3; n <= 8; ++n) {
        for (bool is_cycle : {false, true}) {
            std::string spec = (is_cycle ? "cycle:" : "path:") + std::to_string(n);
            std::string name = "closed form " + spec;
            try {
                Graph g = Graph::from_spec(spec);
                Rational expected =
                    is_cycle ? reference::cycle_expected_pt(n) : reference::path_expected_pt(n);
                MinEptResult got = min_expected_pt(g);
                if (got.value != expected)
                    report.checks.push_back(fail_check(name, "expected " + fraction_string(expected) +
                                                                 ", got " + fraction_string(got.value)));
                else report.checks.push_back(pass_check(name, fraction_string(got.value)));
            } catch (const std::exception& e) {
                report.checks.push_back(fail_check(name, e.what()));
            }
        }
    }

    // Coupling battery.
    for (const char* spec : {"grid:9x9", "hypercube:6"}) {
        std::string name = std::string("coupling battery ") + spec;
        try {
            Graph g = Graph::from_spec(spec);
            CouplingBatteryResult r = coupling_battery(g, opts.coupling_trials, opts.seed);
            if (r.pass())
                report.checks.push_back(
                    pass_check(name, std::to_string(r.trials) + " trials, containment and domination held"));
            else
                report.checks.push_back(fail_check(
                    name, std::to_string(r.containment_violations) + " containment and " +
                              std::to_string(r.domination_violations) + " domination violations"));
        } catch (const std::exception& e) {
            report.checks.push_back(fail_check(name, e.what()));
        }
    }

    // Numeric table; the float pipeline must land within 1e-8 relative.
    for (const auto& row : reference::kFloatTable) {
        if (row.d > opts.max_float_d) break;
        std::string name = "float table d=" + std::to_string(row.d);
        try {
            TransitionMatrix m = build_matrix(row.d, ChainMode::floating, {}, opts.workers);
            StationaryDist dist = stationary(m);
            double mu_err = std::fabs(dist.mu_f - row.mu) / row.mu;
            double eps_err = std::fabs(dist.eps_f - row.eps) / row.eps;
            if (mu_err > 1e-8)
                report.checks.push_back(fail_check(name, "mu " + rel_err_str(row.mu, dist.mu_f)));
            else if (eps_err > 1e-8)
                report.checks.push_back(fail_check(name, "eps " + rel_err_str(row.eps, dist.eps_f)));
            else {
                std::ostringstream note;
                note.precision(3);
                note << "rel err mu " << mu_err << ", eps " << eps_err;
                report.checks.push_back(pass_check(name, note.str()));
            }
        } catch (const std::exception& e) {
            report.checks.push_back(fail_check(name, e.what()));
        }
    }

    return report;
}

}  // namespace pzf
