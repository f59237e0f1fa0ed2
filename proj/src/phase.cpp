#include "ergm/phase.hpp"

#include <algorithm>
#include <cmath>

#include "ergm/error.hpp"

namespace ergm {

std::string to_string(Regime r) {
    switch (r) {
    case Regime::subcritical: return "subcritical";
    case Regime::supercritical: return "supercritical";
    case Regime::critical_present: return "critical-present";
    }
    return "unknown";
}

namespace {
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_unit(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw SpecError("density must lie in [0,1] (got " + std::to_string(q) + ")");
    }
}
} // namespace

double free_energy(const ErgmSpec& spec, double q) {
    check_unit(q);
    return hamiltonian_poly(spec, q, 0) - 0.5 * (xlogx(q) + xlogx(1.0 - q));
}

double free_energy_d1(const ErgmSpec& spec, double q) {
    return hamiltonian_poly(spec, q, 1) - 0.5 * (std::log(q) - std::log1p(-q));
}

double free_energy_d2(const ErgmSpec& spec, double q) {
    return hamiltonian_poly(spec, q, 2) - 0.5 / (q * (1.0 - q));
}

double fixed_point_residual(const ErgmSpec& spec, double q) {
    return std::abs(q - phi(2.0 * hamiltonian_poly(spec, q, 1)));
}

namespace {

double polish(const ErgmSpec& spec, double a, double b, double tol) {
    double fa = free_energy_d1(spec, a);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = free_energy_d1(spec, m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a < 1e-10) break;
    }
    double q = 0.5 * (a + b);
    for (int it = 0; it < 50; ++it) {
        const double f = free_energy_d1(spec, q);
        if (std::abs(f) < tol) break;
        const double step = f / free_energy_d2(spec, q);
        const double next = q - step;
        if (!(next > a && next < b) || !std::isfinite(next)) {
            // Fall back to bisection inside the bracket.
            const double fa2 = free_energy_d1(spec, a);
            if ((f > 0) == (fa2 > 0)) a = q; else b = q;
            q = 0.5 * (a + b);
            continue;
        }
        q = next;
    }
    return q;
}

} // namespace

PhaseReport find_wells(const ErgmSpec& spec, std::size_t well_index, const WellSearch& opts) {
    PhaseReport r;
    r.well_index = well_index;
    const std::size_t m = opts.grid_points;
    std::vector<double> grid(m), slope(m);
    for (std::size_t i = 0; i < m; ++i) {
        grid[i] = opts.lo + (opts.hi - opts.lo) * static_cast<double>(i) / static_cast<double>(m - 1);
        slope[i] = free_energy_d1(spec, grid[i]);
    }
    if (!(slope.front() > 0.0 && slope.back() < 0.0)) {
        throw NumericalRefusal("free energy slope does not diverge at the boundary of the search domain");
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        // + to - (or + to 0) marks a local maximizer.
        if (slope[i] > 0.0 && slope[i + 1] <= 0.0) {
            double q = slope[i + 1] == 0.0 ? grid[i + 1]
                                           : polish(spec, grid[i], grid[i + 1], opts.slope_tol);
            r.maximizers.push_back({q, free_energy(spec, q), free_energy_d2(spec, q)});
        }
    }
    double best = -INFINITY;
    for (const auto& s : r.maximizers) best = std::max(best, s.value);
    bool critical = false;
    for (const auto& s : r.maximizers) {
        if (s.value < best - opts.value_tol) continue;
        r.global_max_set.push_back(s.q);
        if (std::abs(s.second) < opts.critical_tol) {
            critical = true;
        } else if (s.second < 0.0) {
            r.strict_set.push_back(s.q);
        }
    }
    if (critical) {
        r.regime = Regime::critical_present;
    } else if (r.maximizers.size() == 1 && r.maximizers[0].second < 0.0) {
        r.regime = Regime::subcritical;
    } else {
        r.regime = Regime::supercritical;
    }
    r.dobrushin = dobrushin_check(spec);
    if (!r.strict_set.empty()) {
        if (well_index >= r.strict_set.size()) {
            throw SpecError("well index " + std::to_string(well_index) + " out of range; only " +
                            std::to_string(r.strict_set.size()) + " strict global maximizer(s)");
        }
        const double p = r.strict_set[well_index];
        r.selected_p = p;
        r.cstar_extrapolated = r.regime != Regime::subcritical;
        try {
            r.cstar = cstar(spec, p);
        } catch (const NumericalRefusal& ex) {
            r.cstar_refusal = ex.what();
        }
        if (spec.n > 1) {
            try {
                r.sigma_n_sq = sigma_n_sq(spec, p, spec.n);
            } catch (const NumericalRefusal&) {
            }
        }
    }
    return r;
}

bool dobrushin_check(const ErgmSpec& spec) { return hamiltonian_poly(spec, 1.0, 2) < 2.0; }

CstarTerms cstar_terms(const ErgmSpec& spec, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw SpecError("c* needs p in (0,1) (got " + std::to_string(p) + ")");
    }
    CstarTerms c{};
    c.p = p;
    const double q = 1.0 - p;
    for (std::size_t l = 1; l < spec.motifs.size(); ++l) {
        const MotifGraph& g = spec.motifs[l];
        c.S += spec.beta[l] * static_cast<double>(g.wedges()) * std::pow(p, g.e());
        c.T += spec.beta[l] * static_cast<double>(g.triangles()) * std::pow(p, g.e());
    }
    c.denom = 1.0 - 2.0 / p * q * c.S;
    if (!(c.denom > 0.0)) {
        throw NumericalRefusal("c* singular: 1 - 2(1-p)S/p = " + std::to_string(c.denom) +
                               " is not positive");
    }
    c.map_slope = p * q * 2.0 * hamiltonian_poly(spec, p, 2);
    if (!(c.map_slope < 1.0)) {
        throw NumericalRefusal("c* singular: fixed-point map slope " +
                               std::to_string(c.map_slope) + " is not below 1");
    }
    for (std::size_t l = 1; l < spec.motifs.size(); ++l) {
        const MotifGraph& g = spec.motifs[l];
        double inner = 0.0;
        for (int j = 0; j < g.e(); ++j) {
            inner += 4.0 * static_cast<double>(g.wedges_without(j)) * std::pow(p, g.e() - 3) *
                     q * q * c.S / c.denom;
            inner += 12.0 * static_cast<double>(g.triangles_without(j)) * std::pow(p, g.e() - 4) *
                     q * q * q * c.S;
        }
        c.edge_sum += spec.beta[l] * inner;
        c.tail += spec.beta[l] * g.e() * std::pow(p, g.e() - 1) * (g.v() - 2) * (g.v() - 3);
    }
    c.bias_sum = (1.0 - 2.0 * p) * (8.0 * q * c.S * c.S / (p * p * p * c.denom) +
                                    36.0 * q * q * c.T * c.T / (p * p * p * p));
    c.bracket = c.edge_sum + c.bias_sum - c.tail;
    c.value = p * q / (1.0 - c.map_slope) * c.bracket;
    return c;
}

double cstar(const ErgmSpec& spec, double p) { return cstar_terms(spec, p).value; }

double sigma_n_sq(const ErgmSpec& spec, double p, std::size_t n) {
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        const MotifGraph& g = spec.motifs[j];
        double dd = 0.0;
        for (int d : g.degrees()) dd += static_cast<double>(d) * (d - 1);
        if (dd != 0.0) sum += spec.beta[j] * std::pow(p, g.e() - 2) * dd;
    }
    const double bracket = 1.0 - p * (1.0 - p) * sum;
    if (!(bracket > 0.0)) {
        throw NumericalRefusal("variance proxy singular: bracket " + std::to_string(bracket) +
                               " is not positive");
    }
    return p * (1.0 - p) * static_cast<double>(n - 1) / bracket;
}

} // namespace ergm
