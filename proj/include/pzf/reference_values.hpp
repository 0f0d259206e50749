// Known reference values used by the verification suite: the exact d = 2
// window-chain transition matrix, exact stationary fractions mu_d / eps_d
// for small d, their known numeric values through d = 14, and the
// closed-form optimal expected propagation times for paths and cycles.
#pragma once

#include "pzf/rational.hpp"

#include <array>
#include <string_view>

namespace pzf::reference {

// Rows/columns in lexicographic tuple order (0,0),(0,1),(1,0),(1,1).
inline constexpr std::array<std::array<std::string_view, 4>, 4> kWindowMatrixD2 = {{
    {"0", "0", "0", "1"},
    {"1/16", "9/32", "3/32", "9/16"},
    {"1/16", "3/32", "9/32", "9/16"},
    {"1/256", "15/256", "15/256", "225/256"},
}};

// Exact all-white stationary mass mu_d, d = 2..7.
inline constexpr std::array<std::string_view, 6> kMuExact = {
    "1/77",
    "1861/491117",
    "11439524/9092101243",
    "1133763610798567/2542177028478096119",
    "112666827183116235892325831063/686127236264864409019398540749761",
    "536778086928248989283123883507309287148693034345565/"
    "8663791645046173690408989931892492266198652103814670581",
};

inline constexpr std::string_view kEps2 = "1/75";
inline constexpr std::string_view kEps3 = "1861/487395";

struct FloatTableRow {
    int d;
    double mu;
    double eps;
};

// Numeric mu_d / eps_d for d = 2..14.
inline constexpr std::array<FloatTableRow, 13> kFloatTable = {{
    {2, 0.012987012987012988, 0.013333333333333334},
    {3, 0.0037893210782766634, 0.0038182582915294574},
    {4, 0.0012581826460420552, 0.001261356680213082},
    {5, 0.0004459813766302923, 0.0004463795305453566},
    {6, 0.00016420690103551534, 0.00016426084656466706},
    {7, 6.1956486134e-5, 6.1964164298e-5},
    {8, 2.3776197997e-5, 2.3777328666e-5},
    {9, 9.2381456535e-6, 9.2383163433e-6},
    {10, 3.6235531968e-6, 3.6235794573e-6},
    {11, 1.4319129399e-6, 1.4319170406e-6},
    {12, 5.6925354755e-7, 5.6925419565e-7},
    {13, 2.2742611942e-7, 2.2742622287e-7},
    {14, 9.1236746477e-8, 9.1236763126e-8},
}};

// min over single-vertex starts of the expected propagation time, n > 2.
inline Rational path_expected_pt(int n) {
    return make_rational(n, 2) + (n % 2 == 0 ? make_rational(2, 3) : make_rational(1, 2));
}

inline Rational cycle_expected_pt(int n) {
    return make_rational(n, 2) + (n % 2 == 0 ? make_rational(1, 3) : make_rational(1, 2));
}

}  // namespace pzf::reference
