#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/motif.hpp"

namespace ergm {

struct ErgmSpec {
    std::size_t n = 0;
    std::vector<double> beta;
    std::vector<MotifGraph> motifs;

    std::size_t K() const { return motifs.empty() ? 0 : motifs.size() - 1; }
};

// Throws SpecError if G_0 is not a single edge, beta and motifs differ in
// length, n < 2, or some beta_j (j >= 1) is not strictly positive.
// Returns the nondegeneracy flag: some G_j (j >= 1) is not a disjoint union
// of edges.
bool validate_spec(const ErgmSpec& spec);

// Convenience builders for the common edge / wedge / triangle family.
ErgmSpec make_spec(std::size_t n, std::vector<double> beta, std::vector<MotifGraph> motifs);

// 16 hex digits; independent of motif order and of n.
std::string fingerprint(const ErgmSpec& spec);

double hamiltonian_value(const ErgmSpec& spec, const SimpleGraph& x);

// H(q) = sum beta_j q^{e_j} and its first two derivatives.
double hamiltonian_poly(const ErgmSpec& spec, double q, int order);

double phi(double s);
// phi'(s) = phi(s)(1 - phi(s)).
double phi_prime(double s);

// n^2 d_e H(x) = sum beta_j N_{G_j}(x, e) / n^{v_j - 2}.
// Coefficients are cached, the edge/wedge/triangle/path-3 terms share one
// degree and codegree lookup, and other motifs use the enumerator.
class Differential {
public:
    explicit Differential(const ErgmSpec& spec);

    double operator()(const SimpleGraph& x, const EdgeId& e) const;
    double probability(const SimpleGraph& x, const EdgeId& e) const {
        return phi((*this)(x, e));
    }
    bool uses_slow_path() const { return !general_.empty(); }

private:
    std::size_t n_;
    double constant_ = 0.0;
    double wedge_ = 0.0;
    double triangle_ = 0.0;
    double path3_ = 0.0;
    std::vector<std::pair<MotifGraph, double>> general_;
};

double differential(const ErgmSpec& spec, const SimpleGraph& x, const EdgeId& e);
bool uses_slow_path(const ErgmSpec& spec);
double conditional_probability(const ErgmSpec& spec, const SimpleGraph& x, const EdgeId& e);

// Normalization of the per-edge triangle / wedge constants.
//  literal:   c_tri = |E_tri| / 3,  c_wedge = |E_wedge|
//  oriented:  c_tri = |E_tri| / 6,  c_wedge = |E_wedge| / 2
// The oriented form counts each adjacent pair (f, f') once per compatible
// orientation and makes the approximation exact for a bare wedge or
// triangle motif. It is the default for the residual.
enum class ConstantsConvention { literal, oriented };

struct MotifConstants {
    double p = 0.0;
    ConstantsConvention convention = ConstantsConvention::oriented;
    // [motif][edge] raw adjacency classes.
    std::vector<std::vector<int>> tri_edges;
    std::vector<std::vector<int>> wedge_edges;
    // [motif][edge] normalized per-edge constants.
    std::vector<std::vector<double>> c_tri;
    std::vector<std::vector<double>> c_wedge;
    // [motif] sums over edges.
    std::vector<double> c_tri_motif;
    std::vector<double> c_wedge_motif;
    // sum_j beta_j p^{e_j - 3} C_tri(G_j), sum_j beta_j p^{e_j - 2} C_wedge(G_j)
    double c_tri_total = 0.0;
    double c_wedge_total = 0.0;
};

MotifConstants motif_constants(const ErgmSpec& spec, double p,
                               ConstantsConvention convention = ConstantsConvention::oriented);

// n^2 d_e H(x) - (C_tri N_tri(x,e) + C_wedge N_wedge(x,e)) / n.
double hajek_residual(const ErgmSpec& spec, const MotifConstants& consts, const SimpleGraph& x,
                      const EdgeId& e);
double hajek_residual(const Differential& d, const MotifConstants& consts, const SimpleGraph& x,
                      const EdgeId& e);

} // namespace ergm
