#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergm/model.hpp"

namespace ergm {

enum class Regime { subcritical, supercritical, critical_present };
std::string to_string(Regime r);

struct Stationary {
    double q;
    double value;   // L(q)
    double second;  // L''(q)
};

struct PhaseReport {
    std::vector<Stationary> maximizers;   // all local maximizers, ascending q
    std::vector<double> global_max_set;   // M
    std::vector<double> strict_set;       // U, ascending
    Regime regime = Regime::subcritical;
    std::optional<double> selected_p;     // U[well_index] when U is nonempty
    std::size_t well_index = 0;
    bool dobrushin = false;
    std::optional<double> cstar;
    bool cstar_extrapolated = false;      // true outside the subcritical regime
    std::optional<std::string> cstar_refusal;
    std::optional<double> sigma_n_sq;
};

// L(q) = H(q) - (q log q + (1-q) log(1-q)) / 2, with 0 log 0 = 0.
double free_energy(const ErgmSpec& spec, double q);
double free_energy_d1(const ErgmSpec& spec, double q);
double free_energy_d2(const ErgmSpec& spec, double q);

// |q - phi(2 H'(q))|
double fixed_point_residual(const ErgmSpec& spec, double q);

struct WellSearch {
    std::size_t grid_points = 10000;
    double lo = 1e-9;
    double hi = 1.0 - 1e-9;
    double slope_tol = 1e-13;
    double value_tol = 1e-10;
    double critical_tol = 1e-8;
};

// Locates every local maximizer of L by a sign-change scan of L' followed by
// bisection and Newton polishing. sigma_n_sq is filled when n > 1 and the
// selected well admits it. Throws SpecError if well_index >= |U|.
PhaseReport find_wells(const ErgmSpec& spec, std::size_t well_index = 0,
                       const WellSearch& opts = {});

bool dobrushin_check(const ErgmSpec& spec);

// Inputs of the closed-form marginal correction.
struct CstarTerms {
    double p, S, T, denom, map_slope, edge_sum, bias_sum, tail, bracket, value;
};

// First-order coefficient c in E[X(e)] = p + c/n. The prefactor
// 1/(1 - m) uses m = d/dq phi(2H'(q)) at q = p, i.e. p(1-p) 2H''(p).
// Throws NumericalRefusal when 1 - 2(1-p)S/p <= 0 or m >= 1.
CstarTerms cstar_terms(const ErgmSpec& spec, double p);
double cstar(const ErgmSpec& spec, double p);

// p(1-p)(n-1) / (1 - p(1-p) sum_j beta_j p^{e_j-2} sum_u d_u(d_u-1)).
// Throws NumericalRefusal when the bracket is not positive.
double sigma_n_sq(const ErgmSpec& spec, double p, std::size_t n);

} // namespace ergm
