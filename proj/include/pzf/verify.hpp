// Bundled regression of the known chain/engine constants: the exact d = 2
// matrix, exact and numeric stationary values, path/cycle closed forms, the
// monotone-coupling battery, and structural matrix invariants.
#pragma once

#include "pzf/engine.hpp"
#include "pzf/graph.hpp"
#include "pzf/reference_values.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace pzf {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // expected/actual on failure, a short note on success
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    int max_float_d = 14;          // float table sweep upper end
    uint64_t coupling_trials = 1000;
    uint64_t seed = 0x5eedf00d;
    int workers = 0;
};

// Exact d = 2 matrix against a 4x4 fixture of fraction strings in
// lexicographic tuple order. Failures name the offending entry.
CheckResult check_window_matrix_d2(const std::array<std::array<std::string_view, 4>, 4>& fixture);

// Random nested start pairs on one graph: round-wise blue-set containment of
// the coupled runs, plus domination of the deterministic rule from the same
// start on shared uniforms.
struct CouplingBatteryResult {
    uint64_t trials = 0;
    uint64_t containment_violations = 0;
    uint64_t domination_violations = 0;
    bool pass() const { return containment_violations == 0 && domination_violations == 0; }
};

CouplingBatteryResult coupling_battery(const Graph& g, uint64_t trials, uint64_t seed,
                                       int max_rounds = 0);

// True iff the classical zero forcing run from `start` stays inside the
// probabilistic run, round by round.
bool deterministic_domination_holds(const Graph& g, const BlueSet& start, uint64_t seed,
                                    int max_rounds = 0);

VerifyReport run_verify(const VerifyOptions& opts = {});

}  // namespace pzf
