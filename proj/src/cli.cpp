#include "ergm/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ergm/error.hpp"

namespace ergm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string beta_field(const ErgmSpec& spec) {
    std::string s;
    for (std::size_t j = 0; j < spec.beta.size(); ++j) s += (j ? ";" : "") + fmt(spec.beta[j]);
    return s;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name, const ErgmSpec& spec) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream f(cfg.out / name);
    if (!f) throw SpecError("cannot write " + (cfg.out / name).string());
    f << "# fingerprint=" << fingerprint(spec) << " seed=" << cfg.seed << "\n";
    return f;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + fmt(v[i]);
    return s;
}

EstimateResult run_method(const std::string& method, const ChainConfig& cc, const RunConfig& cfg) {
    EstimatorOptions opts;
    opts.threads = cfg.threads;
    if (method == "marginal") return marginal_correction(cc, opts);
    if (method == "fluct") return differential_fluctuation(cc, opts);
    if (method == "hajek") return hajek_ratio(cc, opts);
    if (method == "degvar") return degree_variance(cc, opts);
    if (method == "wasserstein-plugin") return wasserstein_plugin(cc, opts);
    if (method == "wasserstein-coupled") return wasserstein_coupled(cc, opts);
    throw SpecError("unknown method \"" + method + "\"");
}

void write_phase(const RunConfig& cfg, const ErgmSpec& spec, const PhaseReport& r,
                 std::ostream& out) {
    std::ostringstream kv;
    kv << "regime " << to_string(r.regime) << "\n";
    for (const auto& s : r.maximizers) {
        kv << "maximizer q=" << fmt(s.q) << " L=" << fmt(s.value) << " L''=" << fmt(s.second) << "\n";
    }
    kv << "global_max_set " << join(r.global_max_set) << "\n";
    kv << "strict_set " << join(r.strict_set) << "\n";
    kv << "selected_p " << (r.selected_p ? fmt(*r.selected_p) : "none") << "\n";
    kv << "dobrushin " << (r.dobrushin ? "true" : "false") << "\n";
    kv << "cstar " << (r.cstar ? fmt(*r.cstar) : "none") << "\n";
    kv << "cstar_extrapolated " << (r.cstar_extrapolated ? "true" : "false") << "\n";
    kv << "sigma_n_sq " << (r.sigma_n_sq ? fmt(*r.sigma_n_sq) : "none") << "\n";
    out << kv.str();
    open_out(cfg, "phase.txt", spec) << kv.str();
    auto csv = open_out(cfg, "phase.csv", spec);
    csv << "regime,selected_p,dobrushin,cstar,sigma_n_sq,maximizers,global_max_set,strict_set\n";
    csv << to_string(r.regime) << "," << (r.selected_p ? fmt(*r.selected_p) : "") << ","
        << (r.dobrushin ? 1 : 0) << "," << (r.cstar ? fmt(*r.cstar) : "") << ","
        << (r.sigma_n_sq ? fmt(*r.sigma_n_sq) : "") << "," << r.maximizers.size() << ","
        << join(r.global_max_set) << "," << join(r.strict_set) << "\n";
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    cfg.validate();
    ErgmSpec spec = parse_spec_file(cfg.spec_path);
    if (cfg.n) spec.n = *cfg.n;
    validate_spec(spec);
    if (cfg.simulates() && spec.n < 8) {
        throw SpecError("simulation subcommands need n >= 8 (spec has n = " + std::to_string(spec.n) + ")");
    }
    const PhaseReport report = find_wells(spec, cfg.well_index);

    if (cfg.subcommand == "phase") {
        write_phase(cfg, spec, report, out);
        return exit_ok;
    }
    if (cfg.subcommand == "cstar") {
        if (!report.selected_p) throw NumericalRefusal("no strict global maximizer; c* undefined");
        if (report.regime != Regime::subcritical) {
            err << "warning: " << to_string(report.regime)
                << " spec; c* is an extrapolation at the selected well\n";
        }
        const CstarTerms t = cstar_terms(spec, *report.selected_p);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%+.6f", t.value);
        out << "cstar " << buf << "\n";
        std::ostringstream kv;
        kv << "p " << fmt(t.p) << "\nS " << fmt(t.S) << "\nT " << fmt(t.T) << "\ndenominator "
           << fmt(t.denom) << "\nmap_slope " << fmt(t.map_slope) << "\nbracket " << fmt(t.bracket)
           << "\ncstar " << fmt(t.value) << "\nextrapolated "
           << (report.regime != Regime::subcritical ? "true" : "false") << "\n";
        open_out(cfg, "cstar.txt", spec) << kv.str();
        return exit_ok;
    }

    if (report.regime == Regime::critical_present) {
        throw NumericalRefusal("critical maximizer present; estimators need a strict well");
    }
    if (!report.selected_p) throw NumericalRefusal("no strict global maximizer");
    const double p = *report.selected_p;

    std::vector<std::size_t> ns = cfg.grid;
    if (ns.empty()) ns.push_back(spec.n);

    if (cfg.subcommand == "sample") {
        auto csv = open_out(cfg, "trajectory.csv", spec);
        csv << "replica,sweep,edge_density,hamiltonian_value,guard_trips\n";
        for (std::size_t n : ns) {
            ErgmSpec s = spec;
            s.n = n;
            const ChainConfig cc = chain_config(cfg, s, p);
            for (std::size_t r = 0; r < cc.replicas; ++r) {
                const ChainSummary sum = run_chain(cc, r, [&](const Snapshot& snap) {
                    csv << snap.replica << "," << snap.sweep << "," << fmt(snap.x.edge_density())
                        << "," << fmt(hamiltonian_value(s, snap.x)) << "," << snap.guard_trips << "\n";
                });
                out << "n=" << n << " replica=" << r << " snapshots=" << sum.snapshots
                    << " guard_trips=" << sum.guard_trips << "\n";
            }
        }
        return exit_ok;
    }

    if (cfg.subcommand == "scaling") {
        std::vector<double> xs, ys, ses;
        for (std::size_t n : ns) {
            ErgmSpec s = spec;
            s.n = n;
            const EstimateResult r = run_method(cfg.method, chain_config(cfg, s, p), cfg);
            xs.push_back(static_cast<double>(n));
            ys.push_back(r.point);
            ses.push_back(r.se);
            out << results_row(r, s) << "\n";
        }
        const ScalingFit fit = scaling_fit(xs, ys);
        auto csv = open_out(cfg, "scaling.csv", spec);
        csv << "# method=" << cfg.method << " slope=" << fmt(fit.slope)
            << " slope_se=" << fmt(fit.slope_se) << " intercept=" << fmt(fit.intercept) << "\n";
        csv << "n,estimate,se\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            csv << static_cast<std::size_t>(xs[i]) << "," << fmt(ys[i]) << "," << fmt(ses[i]) << "\n";
        }
        out << "slope " << fmt(fit.slope) << " se " << fmt(fit.slope_se) << " intercept "
            << fmt(fit.intercept) << "\n";
        return exit_ok;
    }

    std::vector<std::string> methods{cfg.subcommand};
    if (cfg.subcommand == "wasserstein") methods = {"wasserstein-plugin", "wasserstein-coupled"};
    auto csv = open_out(cfg, cfg.subcommand + ".csv", spec);
    csv << results_header() << "\n";
    for (std::size_t n : ns) {
        ErgmSpec s = spec;
        s.n = n;
        const ChainConfig cc = chain_config(cfg, s, p);
        for (const std::string& m : methods) {
            const EstimateResult r = run_method(m, cc, cfg);
            csv << results_row(r, s) << "\n";
            out << results_row(r, s) << "\n";
            if (r.guard_trips) err << "note: " << r.guard_trips << " guard trips (" << m << ", n=" << n << ")\n";
        }
        if (cfg.subcommand == "marginal" && report.cstar) out << "cstar " << fmt(*report.cstar) << "\n";
    }
    return exit_ok;
}

} // namespace

ChainConfig chain_config(const RunConfig& cfg, const ErgmSpec& spec, double p) {
    ChainConfig cc;
    cc.spec = spec;
    cc.selected_p = p;
    cc.eta = cfg.eta;
    cc.seed = cfg.seed;
    cc.burnin_sweeps = cfg.burnin;
    cc.sample_sweeps = cfg.sweeps;
    cc.thinning_sweeps = cfg.thin;
    cc.replicas = cfg.replicas;
    cc.validate();
    return cc;
}

std::string results_header() { return "method,n,K,beta,point,se,samples,seed"; }

std::string results_row(const EstimateResult& r, const ErgmSpec& spec) {
    return r.method + "," + std::to_string(r.n) + "," + std::to_string(spec.K()) + "," +
           beta_field(spec) + "," + fmt(r.point) + "," + fmt(r.se) + "," +
           std::to_string(r.samples) + "," + std::to_string(r.seed);
}

int run_subcommand(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(cfg, out, err);
    } catch (const SpecError& ex) {
        err << "error: " << ex.what() << "\n";
        return exit_invalid;
    } catch (const NumericalRefusal& ex) {
        err << "refused: " << ex.what() << "\n";
        return exit_refused;
    }
}

} // namespace ergm
