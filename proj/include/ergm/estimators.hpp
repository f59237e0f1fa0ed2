#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergm/glauber.hpp"
#include "ergm/phase.hpp"

namespace ergm {

struct EstimateResult {
    std::string method;
    double point = 0.0;
    double se = 0.0;
    std::size_t samples = 0;   // snapshots over all replicas
    std::size_t n = 0;
    std::string fingerprint;
    std::uint64_t seed = 0;
    std::size_t replicas = 0;
    double density_autocorr = 0.0;  // lag-1, pooled over replicas
    std::uint64_t guard_trips = 0;
    bool slow_path = false;
    std::map<std::string, double> extra;
};

struct ScalingFit {
    std::vector<double> n;
    std::vector<double> value;
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

struct EstimatorOptions {
    std::size_t edge_sample = 64;
    std::size_t batches_per_replica = 20;
    Vertex degree_vertex = 0;
    // Overrides the per-replica random edge subsample when set.
    std::optional<std::vector<EdgeId>> edges;
    // Worker threads; 0 picks hardware concurrency.
    std::size_t threads = 0;
};

// Per-snapshot measurement with a fixed number of channels. Estimates are
// smooth functions of the channel means.
class Observable {
public:
    virtual ~Observable() = default;
    virtual std::size_t channels() const = 0;
    virtual void measure(const SimpleGraph& x, std::span<const EdgeId> edges, double* out) const = 0;
};

// Rows of channel values, one row per snapshot, for one replica.
struct Series {
    std::size_t channels = 0;
    std::vector<double> values;  // row-major
    std::vector<double> density;
    std::uint64_t guard_trips = 0;

    std::size_t rows() const { return channels ? values.size() / channels : 0; }
};

// Fold that turns snapshots of one replica into a Series.
class SeriesFold {
public:
    SeriesFold(const Observable& obs, std::vector<EdgeId> edges);
    void operator()(const Snapshot& s);
    Series take() { return std::move(series_); }

private:
    const Observable& obs_;
    std::vector<EdgeId> edges_;
    Series series_;
    std::vector<double> row_;
};

using Functional = std::function<double(std::span<const double>)>;

// point = f(global channel means); se = SD of f over batch means / sqrt(B).
struct BatchEstimate {
    double point = 0.0;
    double se = 0.0;
    std::size_t samples = 0;
    std::size_t batches = 0;
};
BatchEstimate batch_means(const std::vector<Series>& reps, const Functional& f,
                          std::size_t batches_per_replica);

double lag1_autocorrelation(const std::vector<Series>& reps);

// Random distinct edges (all pairs if fewer), drawn from the replica's
// subsample stream.
std::vector<EdgeId> edge_subsample(const ChainConfig& cfg, std::size_t replica, std::size_t count);

// Runs every replica (in parallel) and returns the series in replica order.
std::vector<Series> collect(const ChainConfig& cfg, const Observable& obs,
                            const EstimatorOptions& opts = {});

// Selected well density, refusing when no strict global maximizer exists.
double require_well(const ErgmSpec& spec, std::size_t well_index);

// Observables.
class DensityObservable : public Observable {
public:
    std::size_t channels() const override { return 1; }
    void measure(const SimpleGraph& x, std::span<const EdgeId>, double* out) const override;
};

// mean_e |n^2 d_e H - center|
class FluctuationObservable : public Observable {
public:
    FluctuationObservable(const ErgmSpec& spec, double center) : d_(spec), center_(center) {}
    std::size_t channels() const override { return 1; }
    void measure(const SimpleGraph& x, std::span<const EdgeId> edges, double* out) const override;

private:
    Differential d_;
    double center_;
};

// mean_e |phi(n^2 d_e H) - p|
class PluginObservable : public Observable {
public:
    PluginObservable(const ErgmSpec& spec, double p) : d_(spec), p_(p) {}
    std::size_t channels() const override { return 1; }
    void measure(const SimpleGraph& x, std::span<const EdgeId> edges, double* out) const override;

private:
    Differential d_;
    double p_;
};

// Edge means of r, r^2, d, d^2 for the residual and the differential,
// each shifted by a fixed center (2 beta_0 and 2H'(p)) so that second
// moments do not cancel.
class HajekObservable : public Observable {
public:
    HajekObservable(const ErgmSpec& spec, MotifConstants consts);
    std::size_t channels() const override { return 4; }
    void measure(const SimpleGraph& x, std::span<const EdgeId> edges, double* out) const override;

private:
    Differential d_;
    MotifConstants consts_;
    double r_shift_;
    double d_shift_;
};

// deg_v, deg_v^2
class DegreeObservable : public Observable {
public:
    explicit DegreeObservable(Vertex v) : v_(v) {}
    std::size_t channels() const override { return 2; }
    void measure(const SimpleGraph& x, std::span<const EdgeId>, double* out) const override;

private:
    Vertex v_;
};

// n (p_hat - p)
EstimateResult marginal_correction(const ChainConfig& cfg, const EstimatorOptions& opts = {});
// E |n^2 d_e H(X) - 2H'(p)|
EstimateResult differential_fluctuation(const ChainConfig& cfg, const EstimatorOptions& opts = {});
// C(n,2) E |phi(n^2 d_e H(X)) - p|
EstimateResult wasserstein_plugin(const ChainConfig& cfg, const EstimatorOptions& opts = {});
// Stationary E d_H(X, Y) under the shared-u coupling.
EstimateResult wasserstein_coupled(const ChainConfig& cfg, const EstimatorOptions& opts = {});
// SD(residual) / SD(differential). Refuses degenerate specs.
EstimateResult hajek_ratio(const ChainConfig& cfg, const EstimatorOptions& opts = {},
                           ConstantsConvention convention = ConstantsConvention::oriented);
// Var(deg_v) / sigma_n^2. extra holds the raw variance and its SE.
EstimateResult degree_variance(const ChainConfig& cfg, const EstimatorOptions& opts = {});

// OLS of log value on log n.
ScalingFit scaling_fit(const std::vector<double>& n, const std::vector<double>& value);

} // namespace ergm
