#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "ergm/graph.hpp"
#include "ergm/model.hpp"
#include "ergm/rng.hpp"

namespace ergm {

struct ChainConfig {
    ErgmSpec spec;
    double selected_p = 0.5;
    double eta = 0.1;
    // false: plain unconditioned dynamics, the window is ignored.
    bool guarded = true;
    std::uint64_t seed = 1;
    std::size_t burnin_sweeps = 50;
    std::size_t sample_sweeps = 200;
    std::size_t thinning_sweeps = 1;
    std::size_t replicas = 1;

    // Throws SpecError on a bad window or sweep counts.
    void validate() const;
    std::uint64_t steps_per_sweep() const { return pair_count(spec.n); }
};

enum class Purpose : std::uint64_t { warm = 0, dynamics = 1, subsample = 2, observe = 3 };

// Stream id for a replica and purpose; replica r never shares a block with
// replica r' != r.
inline std::uint64_t stream_id(std::size_t replica, Purpose purpose) {
    return (static_cast<std::uint64_t>(replica) << 8) | static_cast<std::uint64_t>(purpose);
}

// One Glauber decision: a uniform pair and a uniform threshold, drawn from a
// single Philox block.
struct Decision {
    EdgeId e;
    double u;
};
Decision draw_decision(RandomStream& rng, std::size_t n);

// Edge-count window [ceil(N(p-eta)), floor(N(p+eta))].
class DensityWindow {
public:
    DensityWindow() = default;  // unbounded
    DensityWindow(double p, double eta, std::size_t n);

    // A move from m_old to m_new edges is refused when it leaves the window
    // and lands farther from the window than it started.
    bool allows(std::uint64_t m_old, std::uint64_t m_new) const;
    bool contains(std::uint64_t m) const { return m >= lo_ && m <= hi_; }
    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }

private:
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = UINT64_MAX;
};

DensityWindow make_window(const ChainConfig& cfg);

enum class StepOutcome { unchanged, moved, tripped };

// Sets x(e) to `value` unless the window refuses it.
StepOutcome apply_guarded(SimpleGraph& x, const EdgeId& e, bool value, const DensityWindow& w);

SimpleGraph warm_start(const ChainConfig& cfg, std::size_t replica = 0);

class GlauberChain {
public:
    GlauberChain(const ChainConfig& cfg, std::size_t replica);
    GlauberChain(const ChainConfig& cfg, SimpleGraph start, RandomStream dynamics);

    StepOutcome step();
    StepOutcome step(const Decision& d);
    void sweeps(std::size_t count);

    const SimpleGraph& state() const { return x_; }
    std::uint64_t guard_trips() const { return trips_; }
    std::uint64_t steps() const { return steps_; }
    const Differential& differential() const { return diff_; }
    const DensityWindow& window() const { return window_; }

private:
    SimpleGraph x_;
    Differential diff_;
    DensityWindow window_;
    RandomStream rng_;
    std::uint64_t steps_per_sweep_;
    std::uint64_t trips_ = 0;
    std::uint64_t steps_ = 0;
};

// Free functions mirroring the chain step for explicit state and stream.
StepOutcome glauber_step(SimpleGraph& x, const Differential& d, const DensityWindow& w,
                         RandomStream& rng);

struct Snapshot {
    std::size_t replica;
    std::size_t sweep;          // sweeps since the end of burn-in
    const SimpleGraph& x;
    std::uint64_t guard_trips;  // cumulative, including burn-in
};
using Observer = std::function<void(const Snapshot&)>;

struct ChainSummary {
    std::uint64_t steps = 0;
    std::uint64_t guard_trips = 0;
    std::size_t snapshots = 0;
    bool slow_path = false;
};

// Warm start, burn-in, then one snapshot every thinning_sweeps sweeps until
// sample_sweeps sweeps have elapsed.
ChainSummary run_chain(const ChainConfig& cfg, std::size_t replica, const Observer& observe);

// Shared-u steps. Both chains see the same decision.
struct CoupledOutcome {
    StepOutcome a;
    StepOutcome b;
};
CoupledOutcome monotone_coupled_step(SimpleGraph& xa, SimpleGraph& xb, const Differential& d,
                                     const DensityWindow& w, const Decision& dec);

// X follows the ERGM dynamics (guarded), Y resamples with constant
// probability p. Returns |X(e) - Y(e)| after the step.
int wasserstein_coupled_step(SimpleGraph& x, SimpleGraph& y, const Differential& d,
                             const DensityWindow& w, double p, const Decision& dec,
                             std::uint64_t* trips = nullptr);

// Probability that 1{u < a} and 1{u < b} differ when one u is drawn as
// RandomStream::to_unit does (a multiple of 2^-53). Equals |a - b| up to
// the rounding of a and b onto that lattice.
double shared_u_disagreement(double a, double b);

struct CouplingRun {
    SimpleGraph x;
    SimpleGraph y;
    std::uint64_t steps = 0;
    std::uint64_t disagreements = 0;  // per-step |X(e) - Y(e)| summed
    std::uint64_t guard_trips = 0;
};

struct CoupledSnapshot {
    std::size_t replica;
    std::size_t sweep;
    const SimpleGraph& x;
    const SimpleGraph& y;
};
using CoupledObserver = std::function<void(const CoupledSnapshot&)>;

// Both chains start from the same warm start and share one decision stream.
CouplingRun run_coupled(const ChainConfig& cfg, std::size_t replica,
                        const CoupledObserver& observe);

} // namespace ergm
