#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pfdyn/polymap.hpp"

namespace pfdyn {

/// Axis-aligned box in R^d.
struct Box {
    std::vector<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(std::span<const double> p) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }

    double diameter() const {
        double d2 = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) d2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
        return std::sqrt(d2);
    }

    void validate() const {
        if (lo.size() != hi.size() || lo.empty()) throw InputError("box bounds length mismatch");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) throw InputError("box must be non-degenerate");
    }
};

/// Any coordinate beyond this magnitude aborts an orbit: the compactness the
/// analysis assumes has failed and continuing would only produce inf/nan.
inline constexpr double kOrbitOverflowLimit = 1e12;

/// The map a -> a + delta * F(a). Each coordinate belongs to a block (one per
/// underlying evolution variable) and advances with that block's delta; for a
/// plain ODE there is a single block. tau records the direction weights of
/// the blocks (non-negative, summing to 1).
struct DifferentialIteration {
    PolyMap field;               // square, dimension d
    std::vector<double> delta;   // one entry per block, each in (0, delta0]
    std::vector<int> blocks;     // length d: coordinate -> block index
    std::vector<double> tau;     // length = number of blocks
    double delta0 = 1.0;

    /// Single-block constructor for da/dt = F(a).
    static DifferentialIteration ode(PolyMap f, double step, double step_cap = 1.0);

    int dim() const { return field.dim_in(); }
    double delta_for(int coord) const { return delta[blocks[coord]]; }
    double tau_for(int coord) const { return tau[blocks[coord]]; }

    void validate() const;

    /// One step; throws OverflowError if the result leaves the representable range.
    std::vector<double> step(std::span<const double> a) const;
};

struct Orbit {
    std::vector<std::vector<double>> points;  // retained trajectory, points[0] = start
    std::vector<double> delta_used;
    std::vector<double> start;  // first retained point
};

/// Iterate n_steps times from start, discarding the first burn_in points.
/// Deterministic; overflow during iteration propagates with its step index.
Orbit orbit(const DifferentialIteration& it, std::span<const double> start, long n_steps,
            long burn_in = 0);

/// Streaming variant: visit(step_index, point) for every point including the
/// start, without storing the trajectory.
void orbit_visit(const DifferentialIteration& it, std::span<const double> start, long n_steps,
                 const std::function<void(long, std::span<const double>)>& visit);

struct CycleReport {
    long period_steps = 0;
    double period_time = 0;  // period_steps * delta for single-block iterations
    double closure_error = 0;
    std::vector<double> mean_field_residual;
};

/// Scan the orbit tail for the minimal period j with
/// ||points[m] - points[m-j]|| < tol (m = last index, j up to half the orbit).
std::optional<CycleReport> detect_cycle(const DifferentialIteration& it, const Orbit& orb,
                                        double tol);

/// (1/n) sum_k F(points[k]) over a window of points; near zero on true cycles.
std::vector<double> cycle_mean_residual(const DifferentialIteration& it,
                                        std::span<const std::vector<double>> points);

struct InvarianceReport {
    double fraction_escaped = 0;  // final state outside the box, or diverged
    double max_excursion = 0;     // max |coordinate| seen along any trajectory
    long samples = 0;
};

/// Monte Carlo probe of box invariance: sample starts uniformly (seeded),
/// iterate `horizon` steps each. A trajectory counts as escaped when its final
/// state lies outside the box or iteration diverged; transient excursions are
/// visible through max_excursion.
InvarianceReport compact_invariance_probe(const DifferentialIteration& it, const Box& box,
                                          long samples, long horizon, std::uint64_t seed = 0);

}  // namespace pfdyn
