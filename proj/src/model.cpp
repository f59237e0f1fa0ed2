#include "ergm/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ergm/error.hpp"

namespace ergm {

bool validate_spec(const ErgmSpec& spec) {
    if (spec.motifs.empty()) throw SpecError("spec needs at least the edge motif G_0");
    if (spec.beta.size() != spec.motifs.size()) {
        throw SpecError("beta has " + std::to_string(spec.beta.size()) + " entries but there are " +
                        std::to_string(spec.motifs.size()) + " motifs");
    }
    if (spec.motifs[0].kind() != MotifKind::edge) {
        throw SpecError("motif 0 must be the single edge (2 vertices, edge [0,1]); got " +
                        spec.motifs[0].canonical());
    }
    if (spec.n < 2) throw SpecError("n must be at least 2 (got " + std::to_string(spec.n) + ")");
    for (std::size_t j = 0; j < spec.beta.size(); ++j) {
        if (!std::isfinite(spec.beta[j])) {
            throw SpecError("beta[" + std::to_string(j) + "] is not finite");
        }
        if (j >= 1 && !(spec.beta[j] > 0.0)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%g", spec.beta[j]);
            throw SpecError("ferromagnetic assumption violated: beta[" + std::to_string(j) +
                            "] = " + buf + " but every beta_j with j >= 1 must be positive");
        }
        if (spec.motifs[j].e() == 0) {
            throw SpecError("motif " + std::to_string(j) + " has no edges");
        }
    }
    for (std::size_t j = 1; j < spec.motifs.size(); ++j) {
        if (!spec.motifs[j].is_matching()) return true;
    }
    return false;
}

ErgmSpec make_spec(std::size_t n, std::vector<double> beta, std::vector<MotifGraph> motifs) {
    ErgmSpec spec{n, std::move(beta), std::move(motifs)};
    validate_spec(spec);
    return spec;
}

std::string fingerprint(const ErgmSpec& spec) {
    std::vector<std::string> parts;
    parts.reserve(spec.motifs.size());
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", j < spec.beta.size() ? spec.beta[j] : 0.0);
        parts.push_back(spec.motifs[j].canonical() + "=" + buf);
    }
    std::sort(parts.begin(), parts.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& s : parts) {
        for (unsigned char c : s + ";") {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

namespace {
void require_order(const ErgmSpec& spec, const SimpleGraph& x) {
    if (x.n() != spec.n) {
        throw SpecError("graph has " + std::to_string(x.n()) + " vertices but spec has n = " +
                        std::to_string(spec.n));
    }
}
} // namespace

double hamiltonian_value(const ErgmSpec& spec, const SimpleGraph& x) {
    require_order(spec, x);
    double h = 0.0;
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        h += spec.beta[j] * hom_density(spec.motifs[j], x);
    }
    return h;
}

double hamiltonian_poly(const ErgmSpec& spec, double q, int order) {
    double h = 0.0;
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        const int e = spec.motifs[j].e();
        double c = spec.beta[j];
        for (int i = 0; i < order; ++i) c *= (e - i);
        if (c != 0.0) h += c * std::pow(q, e - order);
    }
    return h;
}

double phi(double s) {
    if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
    const double z = std::exp(s);
    return z / (1.0 + z);
}

double phi_prime(double s) {
    const double f = phi(s);
    return f * (1.0 - f);
}

Differential::Differential(const ErgmSpec& spec) : n_(spec.n) {
    const double n = static_cast<double>(spec.n);
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        const MotifGraph& g = spec.motifs[j];
        const double coef = spec.beta[j] / std::pow(n, g.v() - 2);
        switch (g.kind()) {
        case MotifKind::edge: constant_ += 2.0 * coef; break;
        case MotifKind::wedge: wedge_ += coef; break;
        case MotifKind::triangle: triangle_ += coef; break;
        case MotifKind::path3: path3_ += coef; break;
        case MotifKind::general: general_.emplace_back(g, coef); break;
        }
    }
}

double Differential::operator()(const SimpleGraph& x, const EdgeId& e) const {
    if (x.n() != n_) {
        throw SpecError("graph has " + std::to_string(x.n()) + " vertices but spec has n = " +
                        std::to_string(n_));
    }
    double s = constant_;
    if (wedge_ != 0.0) s += wedge_ * static_cast<double>(fast_wedge_rooted(x, e));
    if (triangle_ != 0.0) s += triangle_ * static_cast<double>(fast_triangle_rooted(x, e));
    if (path3_ != 0.0) s += path3_ * static_cast<double>(fast_path3_rooted(x, e));
    for (const auto& [g, coef] : general_) {
        s += coef * static_cast<double>(rooted_count_brute(g, x, e));
    }
    return s;
}

double differential(const ErgmSpec& spec, const SimpleGraph& x, const EdgeId& e) {
    require_order(spec, x);
    return Differential(spec)(x, e);
}

bool uses_slow_path(const ErgmSpec& spec) { return Differential(spec).uses_slow_path(); }

double conditional_probability(const ErgmSpec& spec, const SimpleGraph& x, const EdgeId& e) {
    return phi(differential(spec, x, e));
}

MotifConstants motif_constants(const ErgmSpec& spec, double p, ConstantsConvention convention) {
    if (!(p > 0.0 && p < 1.0)) {
        throw SpecError("motif constants need p in (0,1) (got " + std::to_string(p) + ")");
    }
    const double tri_div = convention == ConstantsConvention::literal ? 3.0 : 6.0;
    const double wedge_div = convention == ConstantsConvention::literal ? 1.0 : 2.0;
    MotifConstants c;
    c.p = p;
    c.convention = convention;
    for (std::size_t j = 0; j < spec.motifs.size(); ++j) {
        const MotifGraph& g = spec.motifs[j];
        std::vector<int> tri(static_cast<std::size_t>(g.e()), 0);
        std::vector<int> wed(static_cast<std::size_t>(g.e()), 0);
        for (int k = 0; k < g.e(); ++k) {
            const auto [a, b] = g.edge(k);
            for (int k2 = 0; k2 < g.e(); ++k2) {
                if (k2 == k) continue;
                const auto [c2, d2] = g.edge(k2);
                int shared = -1, x1 = -1, x2 = -1;
                if (c2 == a || d2 == a) {
                    shared = a;
                    x1 = b;
                } else if (c2 == b || d2 == b) {
                    shared = b;
                    x1 = a;
                } else {
                    continue;
                }
                x2 = c2 == shared ? d2 : c2;
                if (g.adjacent(x1, x2)) {
                    ++tri[static_cast<std::size_t>(k)];
                } else {
                    ++wed[static_cast<std::size_t>(k)];
                }
            }
        }
        std::vector<double> ct, cw;
        double st = 0.0, sw = 0.0;
        for (int k = 0; k < g.e(); ++k) {
            ct.push_back(tri[static_cast<std::size_t>(k)] / tri_div);
            cw.push_back(wed[static_cast<std::size_t>(k)] / wedge_div);
            st += ct.back();
            sw += cw.back();
        }
        c.tri_edges.push_back(std::move(tri));
        c.wedge_edges.push_back(std::move(wed));
        c.c_tri.push_back(std::move(ct));
        c.c_wedge.push_back(std::move(cw));
        c.c_tri_motif.push_back(st);
        c.c_wedge_motif.push_back(sw);
        if (st != 0.0) c.c_tri_total += spec.beta[j] * std::pow(p, g.e() - 3) * st;
        if (sw != 0.0) c.c_wedge_total += spec.beta[j] * std::pow(p, g.e() - 2) * sw;
    }
    return c;
}

double hajek_residual(const Differential& d, const MotifConstants& consts, const SimpleGraph& x,
                      const EdgeId& e) {
    const double n = static_cast<double>(x.n());
    const double approx = consts.c_tri_total * static_cast<double>(fast_triangle_rooted(x, e)) +
                          consts.c_wedge_total * static_cast<double>(fast_wedge_rooted(x, e));
    return d(x, e) - approx / n;
}

double hajek_residual(const ErgmSpec& spec, const MotifConstants& consts, const SimpleGraph& x,
                      const EdgeId& e) {
    require_order(spec, x);
    return hajek_residual(Differential(spec), consts, x, e);
}

} // namespace ergm
