#include "ergm/glauber.hpp"

#include <algorithm>
#include <cmath>

#include "ergm/error.hpp"

namespace ergm {

void ChainConfig::validate() const {
    validate_spec(spec);
    if (!(selected_p >= 0.0 && selected_p <= 1.0)) {
        throw SpecError("selected_p must lie in [0,1] (got " + std::to_string(selected_p) + ")");
    }
    if (guarded) {
        const double room = std::min(selected_p, 1.0 - selected_p);
        if (!(eta > 0.0 && eta < room)) {
            throw SpecError("eta must lie in (0, min(p, 1-p)) = (0, " + std::to_string(room) +
                            "); got " + std::to_string(eta));
        }
    }
    if (thinning_sweeps == 0) throw SpecError("thinning must be at least 1 sweep");
    if (sample_sweeps == 0) throw SpecError("sample sweeps must be positive");
    if (replicas == 0) throw SpecError("replica count must be positive");
}

Decision draw_decision(RandomStream& rng, std::size_t n) {
    const auto b = rng.next_block();
    const std::uint64_t pair_bits = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
    const std::uint64_t u_bits = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
    const std::uint64_t m = static_cast<std::uint64_t>(n) * (n - 1);
    const std::uint64_t idx = RandomStream::scale_below(pair_bits, m);
    const auto a = static_cast<Vertex>(idx / (n - 1));
    auto c = static_cast<Vertex>(idx % (n - 1));
    if (c >= a) ++c;
    return {a < c ? EdgeId{a, c} : EdgeId{c, a}, RandomStream::to_unit(u_bits)};
}

DensityWindow::DensityWindow(double p, double eta, std::size_t n) {
    const double N = static_cast<double>(pair_count(n));
    const double lo = std::ceil(N * (p - eta) - 1e-9);
    const double hi = std::floor(N * (p + eta) + 1e-9);
    lo_ = lo <= 0.0 ? 0 : static_cast<std::uint64_t>(lo);
    hi_ = static_cast<std::uint64_t>(std::max(0.0, hi));
}

bool DensityWindow::allows(std::uint64_t m_old, std::uint64_t m_new) const {
    if (contains(m_new)) return true;
    if (m_new > hi_) return m_new < m_old;
    return m_new > m_old;
}

DensityWindow make_window(const ChainConfig& cfg) {
    if (!cfg.guarded) return {};
    return DensityWindow(cfg.selected_p, cfg.eta, cfg.spec.n);
}

StepOutcome apply_guarded(SimpleGraph& x, const EdgeId& e, bool value, const DensityWindow& w) {
    if (x.has(e) == value) return StepOutcome::unchanged;
    const std::uint64_t m = x.edge_count();
    const std::uint64_t m_new = value ? m + 1 : m - 1;
    if (!w.allows(m, m_new)) return StepOutcome::tripped;
    x.flip(e);
    return StepOutcome::moved;
}

SimpleGraph warm_start(const ChainConfig& cfg, std::size_t replica) {
    RandomStream rng(cfg.seed, stream_id(replica, Purpose::warm));
    return erdos_renyi_sample(cfg.spec.n, cfg.selected_p, rng);
}

GlauberChain::GlauberChain(const ChainConfig& cfg, std::size_t replica)
    : GlauberChain(cfg, warm_start(cfg, replica),
                   RandomStream(cfg.seed, stream_id(replica, Purpose::dynamics))) {}

GlauberChain::GlauberChain(const ChainConfig& cfg, SimpleGraph start, RandomStream dynamics)
    : x_(std::move(start)), diff_(cfg.spec), window_(make_window(cfg)), rng_(dynamics),
      steps_per_sweep_(cfg.steps_per_sweep()) {
    if (x_.n() != cfg.spec.n) throw SpecError("start graph order does not match spec n");
}

StepOutcome GlauberChain::step(const Decision& d) {
    const bool value = d.u < diff_.probability(x_, d.e);
    const StepOutcome out = apply_guarded(x_, d.e, value, window_);
    ++steps_;
    if (out == StepOutcome::tripped) ++trips_;
    return out;
}

StepOutcome GlauberChain::step() { return step(draw_decision(rng_, x_.n())); }

void GlauberChain::sweeps(std::size_t count) {
    const std::uint64_t total = steps_per_sweep_ * count;
    for (std::uint64_t i = 0; i < total; ++i) step();
}

StepOutcome glauber_step(SimpleGraph& x, const Differential& d, const DensityWindow& w,
                         RandomStream& rng) {
    const Decision dec = draw_decision(rng, x.n());
    return apply_guarded(x, dec.e, dec.u < d.probability(x, dec.e), w);
}

ChainSummary run_chain(const ChainConfig& cfg, std::size_t replica, const Observer& observe) {
    cfg.validate();
    GlauberChain chain(cfg, replica);
    chain.sweeps(cfg.burnin_sweeps);
    ChainSummary s;
    s.slow_path = chain.differential().uses_slow_path();
    for (std::size_t sweep = cfg.thinning_sweeps; sweep <= cfg.sample_sweeps;
         sweep += cfg.thinning_sweeps) {
        chain.sweeps(cfg.thinning_sweeps);
        if (observe) observe(Snapshot{replica, sweep, chain.state(), chain.guard_trips()});
        ++s.snapshots;
    }
    s.steps = chain.steps();
    s.guard_trips = chain.guard_trips();
    return s;
}

CoupledOutcome monotone_coupled_step(SimpleGraph& xa, SimpleGraph& xb, const Differential& d,
                                     const DensityWindow& w, const Decision& dec) {
    if (xa.n() != xb.n()) throw SpecError("coupled chains differ in vertex count");
    // Both probabilities are read before either state changes.
    const bool va = dec.u < d.probability(xa, dec.e);
    const bool vb = dec.u < d.probability(xb, dec.e);
    return {apply_guarded(xa, dec.e, va, w), apply_guarded(xb, dec.e, vb, w)};
}

int wasserstein_coupled_step(SimpleGraph& x, SimpleGraph& y, const Differential& d,
                             const DensityWindow& w, double p, const Decision& dec,
                             std::uint64_t* trips) {
    if (x.n() != y.n()) throw SpecError("coupled chains differ in vertex count");
    const bool vx = dec.u < d.probability(x, dec.e);
    const bool vy = dec.u < p;
    if (apply_guarded(x, dec.e, vx, w) == StepOutcome::tripped && trips) ++*trips;
    y.set(dec.e, vy);
    return x.has(dec.e) != y.has(dec.e) ? 1 : 0;
}

double shared_u_disagreement(double a, double b) {
    // #{k in [0, 2^53) : k 2^-53 < a} = ceil(a 2^53) for a in [0, 1].
    auto below = [](double t) { return std::ceil(std::clamp(t, 0.0, 1.0) * 0x1.0p53); };
    return std::abs(below(a) - below(b)) * 0x1.0p-53;
}

CouplingRun run_coupled(const ChainConfig& cfg, std::size_t replica,
                        const CoupledObserver& observe) {
    cfg.validate();
    const Differential d(cfg.spec);
    const DensityWindow w = make_window(cfg);
    SimpleGraph start = warm_start(cfg, replica);
    CouplingRun run{start, start};
    RandomStream rng(cfg.seed, stream_id(replica, Purpose::dynamics));
    const std::uint64_t per_sweep = cfg.steps_per_sweep();
    auto advance = [&](std::size_t sweeps) {
        for (std::uint64_t i = 0; i < per_sweep * sweeps; ++i) {
            const Decision dec = draw_decision(rng, cfg.spec.n);
            run.disagreements += static_cast<std::uint64_t>(wasserstein_coupled_step(
                run.x, run.y, d, w, cfg.selected_p, dec, &run.guard_trips));
            ++run.steps;
        }
    };
    advance(cfg.burnin_sweeps);
    for (std::size_t sweep = cfg.thinning_sweeps; sweep <= cfg.sample_sweeps;
         sweep += cfg.thinning_sweeps) {
        advance(cfg.thinning_sweeps);
        if (observe) observe(CoupledSnapshot{replica, sweep, run.x, run.y});
    }
    return run;
}

} // namespace ergm
