#include "pfdyn/difiter.hpp"

#include <cmath>

#include "pfdyn/rng.hpp"

namespace pfdyn {

DifferentialIteration DifferentialIteration::ode(PolyMap f, double step, double step_cap) {
    DifferentialIteration it;
    const int d = f.dim_in();
    it.field = std::move(f);
    it.delta = {step};
    it.blocks.assign(d, 0);
    it.tau = {1.0};
    it.delta0 = step_cap;
    it.validate();
    return it;
}

void DifferentialIteration::validate() const {
    if (!field.is_square()) throw InputError("iteration field must be square");
    const int d = field.dim_in();
    if (static_cast<int>(blocks.size()) != d) throw InputError("block map length must equal dimension");
    for (int b : blocks)
        if (b < 0 || b >= static_cast<int>(delta.size())) throw InputError("block index out of range");
    for (double dv : delta)
        if (!(dv > 0.0) || dv > delta0) throw InputError("delta components must lie in (0, delta0]");
    if (tau.size() != delta.size()) throw InputError("tau length must match delta length");
    double tsum = 0;
    for (double t : tau) {
        if (t < 0) throw InputError("tau components must be non-negative");
        tsum += t;
    }
    if (std::abs(tsum - 1.0) > 1e-12) throw InputError("tau must sum to 1");
}

std::vector<double> DifferentialIteration::step(std::span<const double> a) const {
    const int d = dim();
    if (static_cast<int>(a.size()) != d) throw InputError("state dimension mismatch");
    std::vector<double> f = field.evaluate(a);
    std::vector<double> out(d);
    for (int i = 0; i < d; ++i) {
        out[i] = a[i] + delta_for(i) * f[i];
        if (!std::isfinite(out[i]) || std::abs(out[i]) > kOrbitOverflowLimit)
            throw OverflowError("iteration left the representable range", 0);
    }
    return out;
}

void orbit_visit(const DifferentialIteration& it, std::span<const double> start, long n_steps,
                 const std::function<void(long, std::span<const double>)>& visit) {
    if (n_steps < 0) throw InputError("n_steps must be >= 0");
    std::vector<double> a(start.begin(), start.end());
    visit(0, a);
    for (long k = 1; k <= n_steps; ++k) {
        try {
            a = it.step(a);
        } catch (const OverflowError&) {
            throw OverflowError("orbit diverged", static_cast<std::size_t>(k));
        }
        visit(k, a);
    }
}

Orbit orbit(const DifferentialIteration& it, std::span<const double> start, long n_steps,
            long burn_in) {
    if (burn_in < 0 || burn_in > n_steps) throw InputError("burn_in must lie in [0, n_steps]");
    Orbit orb;
    orb.delta_used = it.delta;
    orb.points.reserve(static_cast<std::size_t>(n_steps - burn_in) + 1);
    orbit_visit(it, start, n_steps, [&](long k, std::span<const double> p) {
        if (k >= burn_in) orb.points.emplace_back(p.begin(), p.end());
    });
    orb.start = orb.points.front();
    return orb;
}

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(d2);
}

}  // namespace

std::optional<CycleReport> detect_cycle(const DifferentialIteration& it, const Orbit& orb,
                                        double tol) {
    if (orb.points.empty()) throw InputError("orbit is empty");
    const long m = static_cast<long>(orb.points.size()) - 1;
    const long j_max = static_cast<long>(orb.points.size()) / 2;
    for (long j = 1; j <= j_max; ++j) {
        const double err = distance(orb.points[m], orb.points[m - j]);
        if (err < tol) {
            CycleReport rep;
            rep.period_steps = j;
            rep.period_time = static_cast<double>(j) * it.delta[0];
            rep.closure_error = err;
            rep.mean_field_residual = cycle_mean_residual(
                it, std::span<const std::vector<double>>(orb.points).subspan(m - j + 1, j));
            return rep;
        }
    }
    return std::nullopt;
}

std::vector<double> cycle_mean_residual(const DifferentialIteration& it,
                                        std::span<const std::vector<double>> points) {
    if (points.empty()) throw InputError("cycle window is empty");
    std::vector<double> mean(it.dim(), 0.0);
    for (const auto& p : points) {
        std::vector<double> f = it.field.evaluate(p);
        for (int i = 0; i < it.dim(); ++i) mean[i] += f[i];
    }
    for (double& v : mean) v /= static_cast<double>(points.size());
    return mean;
}

InvarianceReport compact_invariance_probe(const DifferentialIteration& it, const Box& box,
                                          long samples, long horizon, std::uint64_t seed) {
    box.validate();
    if (box.dim() != it.dim()) throw InputError("box dimension does not match iteration");
    if (samples < 1 || horizon < 0) throw InputError("samples must be >= 1 and horizon >= 0");

    InvarianceReport rep;
    rep.samples = samples;
    long escaped = 0;
    for (long s = 0; s < samples; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        std::vector<double> a(it.dim());
        for (int i = 0; i < it.dim(); ++i) a[i] = rng.uniform(box.lo[i], box.hi[i]);
        bool diverged = false;
        for (long k = 0; k < horizon && !diverged; ++k) {
            try {
                a = it.step(a);
            } catch (const OverflowError&) {
                diverged = true;
            }
            for (double c : a) rep.max_excursion = std::max(rep.max_excursion, std::abs(c));
        }
        if (diverged || !box.contains(a)) ++escaped;
    }
    rep.fraction_escaped = static_cast<double>(escaped) / static_cast<double>(samples);
    return rep;
}

}  // namespace pfdyn
