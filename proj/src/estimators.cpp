#include "ergm/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "ergm/error.hpp"

namespace ergm {

SeriesFold::SeriesFold(const Observable& obs, std::vector<EdgeId> edges)
    : obs_(obs), edges_(std::move(edges)), row_(obs.channels()) {
    series_.channels = obs.channels();
}

void SeriesFold::operator()(const Snapshot& s) {
    obs_.measure(s.x, edges_, row_.data());
    series_.values.insert(series_.values.end(), row_.begin(), row_.end());
    series_.density.push_back(s.x.edge_density());
    series_.guard_trips = s.guard_trips;
}

BatchEstimate batch_means(const std::vector<Series>& reps, const Functional& f,
                          std::size_t batches_per_replica) {
    BatchEstimate out;
    if (reps.empty()) return out;
    const std::size_t c = reps.front().channels;
    std::vector<double> total(c, 0.0), batch(c);
    std::vector<double> stats;
    for (const Series& s : reps) {
        const std::size_t L = s.rows();
        out.samples += L;
        for (std::size_t t = 0; t < L; ++t)
            for (std::size_t k = 0; k < c; ++k) total[k] += s.values[t * c + k];
        const std::size_t B = std::min(batches_per_replica, L);
        for (std::size_t b = 0; b < B; ++b) {
            const std::size_t lo = b * L / B, hi = (b + 1) * L / B;
            std::fill(batch.begin(), batch.end(), 0.0);
            for (std::size_t t = lo; t < hi; ++t)
                for (std::size_t k = 0; k < c; ++k) batch[k] += s.values[t * c + k];
            for (double& v : batch) v /= static_cast<double>(hi - lo);
            stats.push_back(f(batch));
        }
    }
    if (out.samples == 0) return out;
    for (double& v : total) v /= static_cast<double>(out.samples);
    out.point = f(total);
    out.batches = stats.size();
    if (stats.size() >= 2) {
        const double mean = std::accumulate(stats.begin(), stats.end(), 0.0) /
                            static_cast<double>(stats.size());
        double ss = 0.0;
        for (double v : stats) ss += (v - mean) * (v - mean);
        out.se = std::sqrt(ss / static_cast<double>(stats.size() - 1) /
                           static_cast<double>(stats.size()));
    }
    return out;
}

double lag1_autocorrelation(const std::vector<Series>& reps) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Series& s : reps) {
        sum += std::accumulate(s.density.begin(), s.density.end(), 0.0);
        count += s.density.size();
    }
    if (count < 2) return 0.0;
    const double mu = sum / static_cast<double>(count);
    double num = 0.0, den = 0.0;
    for (const Series& s : reps) {
        for (std::size_t t = 0; t < s.density.size(); ++t) {
            const double a = s.density[t] - mu;
            den += a * a;
            if (t + 1 < s.density.size()) num += a * (s.density[t + 1] - mu);
        }
    }
    return den > 0.0 ? num / den : 0.0;
}

std::vector<EdgeId> edge_subsample(const ChainConfig& cfg, std::size_t replica,
                                   std::size_t count) {
    const std::size_t n = cfg.spec.n;
    const std::uint64_t N = pair_count(n);
    std::vector<EdgeId> out;
    if (count >= N) {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) out.push_back({u, v});
        return out;
    }
    RandomStream rng(cfg.seed, stream_id(replica, Purpose::subsample));
    while (out.size() < count) {
        const EdgeId e = draw_decision(rng, n).e;
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
    return out;
}

namespace {

template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

EstimateResult base_result(const std::string& method, const ChainConfig& cfg,
                           const std::vector<Series>& reps, const BatchEstimate& b) {
    EstimateResult r;
    r.method = method;
    r.point = b.point;
    r.se = b.se;
    r.samples = b.samples;
    r.n = cfg.spec.n;
    r.fingerprint = fingerprint(cfg.spec);
    r.seed = cfg.seed;
    r.replicas = cfg.replicas;
    r.density_autocorr = lag1_autocorrelation(reps);
    for (const Series& s : reps) r.guard_trips += s.guard_trips;
    r.slow_path = uses_slow_path(cfg.spec);
    r.extra["batches"] = static_cast<double>(b.batches);
    return r;
}

} // namespace

std::vector<Series> collect(const ChainConfig& cfg, const Observable& obs,
                            const EstimatorOptions& opts) {
    cfg.validate();
    std::vector<Series> out(cfg.replicas);
    parallel_for(cfg.replicas, opts.threads, [&](std::size_t r) {
        std::vector<EdgeId> edges =
            opts.edges ? *opts.edges : edge_subsample(cfg, r, opts.edge_sample);
        for (const EdgeId& e : edges) {
            if (e.u >= e.v || e.v >= cfg.spec.n) throw SpecError("edge subsample entry out of range");
        }
        SeriesFold fold(obs, std::move(edges));
        const ChainSummary s = run_chain(cfg, r, [&](const Snapshot& snap) { fold(snap); });
        out[r] = fold.take();
        out[r].guard_trips = s.guard_trips;
    });
    return out;
}

double require_well(const ErgmSpec& spec, std::size_t well_index) {
    const PhaseReport rep = find_wells(spec, well_index);
    if (rep.regime == Regime::critical_present) {
        throw NumericalRefusal("critical maximizer present; estimators need a strict well");
    }
    if (!rep.selected_p) throw NumericalRefusal("no strict global maximizer");
    return *rep.selected_p;
}

void DensityObservable::measure(const SimpleGraph& x, std::span<const EdgeId>, double* out) const {
    out[0] = x.edge_density();
}

void FluctuationObservable::measure(const SimpleGraph& x, std::span<const EdgeId> edges,
                                    double* out) const {
    double s = 0.0;
    for (const EdgeId& e : edges) s += std::abs(d_(x, e) - center_);
    out[0] = s / static_cast<double>(edges.size());
}

void PluginObservable::measure(const SimpleGraph& x, std::span<const EdgeId> edges,
                               double* out) const {
    double s = 0.0;
    for (const EdgeId& e : edges) s += std::abs(d_.probability(x, e) - p_);
    out[0] = s / static_cast<double>(edges.size());
}

HajekObservable::HajekObservable(const ErgmSpec& spec, MotifConstants consts)
    : d_(spec), consts_(std::move(consts)), r_shift_(2.0 * spec.beta.at(0)),
      d_shift_(2.0 * hamiltonian_poly(spec, consts_.p, 1)) {}

void HajekObservable::measure(const SimpleGraph& x, std::span<const EdgeId> edges,
                              double* out) const {
    double r1 = 0.0, r2 = 0.0, d1 = 0.0, d2 = 0.0;
    for (const EdgeId& e : edges) {
        const double d = d_(x, e) - d_shift_;
        const double r = hajek_residual(d_, consts_, x, e) - r_shift_;
        r1 += r;
        r2 += r * r;
        d1 += d;
        d2 += d * d;
    }
    const double m = static_cast<double>(edges.size());
    out[0] = r1 / m;
    out[1] = r2 / m;
    out[2] = d1 / m;
    out[3] = d2 / m;
}

void DegreeObservable::measure(const SimpleGraph& x, std::span<const EdgeId>, double* out) const {
    const double d = x.degree(v_);
    out[0] = d;
    out[1] = d * d;
}

EstimateResult marginal_correction(const ChainConfig& cfg, const EstimatorOptions& opts) {
    const DensityObservable obs;
    const auto reps = collect(cfg, obs, opts);
    const double n = static_cast<double>(cfg.spec.n);
    const double p = cfg.selected_p;
    const auto b = batch_means(reps, [&](std::span<const double> m) { return n * (m[0] - p); },
                               opts.batches_per_replica);
    return base_result("marginal", cfg, reps, b);
}

EstimateResult differential_fluctuation(const ChainConfig& cfg, const EstimatorOptions& opts) {
    const FluctuationObservable obs(cfg.spec,
                                    2.0 * hamiltonian_poly(cfg.spec, cfg.selected_p, 1));
    const auto reps = collect(cfg, obs, opts);
    const auto b = batch_means(reps, [](std::span<const double> m) { return m[0]; },
                               opts.batches_per_replica);
    return base_result("fluct", cfg, reps, b);
}

EstimateResult wasserstein_plugin(const ChainConfig& cfg, const EstimatorOptions& opts) {
    const PluginObservable obs(cfg.spec, cfg.selected_p);
    const auto reps = collect(cfg, obs, opts);
    const double N = static_cast<double>(pair_count(cfg.spec.n));
    const auto b = batch_means(reps, [&](std::span<const double> m) { return N * m[0]; },
                               opts.batches_per_replica);
    return base_result("wasserstein-plugin", cfg, reps, b);
}

EstimateResult wasserstein_coupled(const ChainConfig& cfg, const EstimatorOptions& opts) {
    cfg.validate();
    std::vector<Series> reps(cfg.replicas);
    parallel_for(cfg.replicas, opts.threads, [&](std::size_t r) {
        Series s;
        s.channels = 1;
        const CouplingRun run = run_coupled(cfg, r, [&](const CoupledSnapshot& snap) {
            s.values.push_back(static_cast<double>(hamming_distance(snap.x, snap.y)));
            s.density.push_back(snap.x.edge_density());
        });
        s.guard_trips = run.guard_trips;
        reps[r] = std::move(s);
    });
    const auto b = batch_means(reps, [](std::span<const double> m) { return m[0]; },
                               opts.batches_per_replica);
    return base_result("wasserstein-coupled", cfg, reps, b);
}

EstimateResult hajek_ratio(const ChainConfig& cfg, const EstimatorOptions& opts,
                           ConstantsConvention convention) {
    if (!validate_spec(cfg.spec)) {
        throw NumericalRefusal("Hajek ratio needs a nondegenerate spec; every motif beyond the "
                               "edge is a disjoint union of edges, so the constants vanish");
    }
    const HajekObservable obs(cfg.spec, motif_constants(cfg.spec, cfg.selected_p, convention));
    const auto reps = collect(cfg, obs, opts);
    auto sd = [](double m1, double m2) { return std::sqrt(std::max(0.0, m2 - m1 * m1)); };
    const auto b = batch_means(
        reps, [&](std::span<const double> m) { return sd(m[0], m[1]) / sd(m[2], m[3]); },
        opts.batches_per_replica);
    EstimateResult r = base_result("hajek", cfg, reps, b);
    r.extra["residual_sd"] =
        batch_means(reps, [&](std::span<const double> m) { return sd(m[0], m[1]); }, 1).point;
    r.extra["differential_sd"] =
        batch_means(reps, [&](std::span<const double> m) { return sd(m[2], m[3]); }, 1).point;
    return r;
}

EstimateResult degree_variance(const ChainConfig& cfg, const EstimatorOptions& opts) {
    if (opts.degree_vertex >= cfg.spec.n) throw SpecError("degree vertex out of range");
    const double p = cfg.selected_p;
    const double sigma = sigma_n_sq(cfg.spec, p, cfg.spec.n);
    const DegreeObservable obs(opts.degree_vertex);
    const auto reps = collect(cfg, obs, opts);
    auto var = [](std::span<const double> m) { return m[1] - m[0] * m[0]; };
    const auto raw = batch_means(reps, var, opts.batches_per_replica);
    const auto b = batch_means(reps, [&](std::span<const double> m) { return var(m) / sigma; },
                               opts.batches_per_replica);
    EstimateResult r = base_result("degvar", cfg, reps, b);
    r.extra["variance"] = raw.point;
    r.extra["variance_se"] = raw.se;
    r.extra["sigma_n_sq"] = sigma;
    r.extra["binomial"] = p * (1.0 - p) * static_cast<double>(cfg.spec.n - 1);
    return r;
}

ScalingFit scaling_fit(const std::vector<double>& n, const std::vector<double>& value) {
    if (n.size() != value.size()) throw SpecError("scaling fit: size mismatch");
    if (n.size() < 3) throw SpecError("scaling fit needs at least 3 points");
    ScalingFit fit{n, value};
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(value[i] > 0.0) || !(n[i] > 0.0)) {
            throw NumericalRefusal("scaling fit needs positive values (point " + std::to_string(i) +
                                   " is " + std::to_string(value[i]) + ")");
        }
        lx.push_back(std::log(n[i]));
        ly.push_back(std::log(value[i]));
    }
    const double m = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw SpecError("scaling fit needs at least two distinct n");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double res = ly[i] - fit.intercept - fit.slope * lx[i];
        rss += res * res;
    }
    fit.slope_se = std::sqrt(rss / (m - 2.0) / sxx);
    return fit;
}

} // namespace ergm
