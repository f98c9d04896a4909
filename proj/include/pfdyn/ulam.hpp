#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pfdyn/difiter.hpp"

namespace pfdyn {

/// Uniform rectangular partition of a box into cells, flat-indexed row-major
/// (first axis fastest). Points on the upper boundary belong to the last cell.
struct GridPartition {
    Box box;
    std::vector<int> cells_per_axis;
    long total_cells = 0;

    static GridPartition uniform(Box box, std::vector<int> cells_per_axis);

    int dim() const { return box.dim(); }

    /// Flat cell index of a point, or -1 outside the box.
    long cell_of(std::span<const double> p) const;

    std::vector<int> cell_coords(long flat) const;
    std::vector<double> cell_center(long flat) const;
    /// Lower corner and side lengths of a cell.
    void cell_bounds(long flat, std::vector<double>& lo, std::vector<double>& width) const;
};

/// Row-stochastic transition matrix over the cells of a partition. Mass
/// mapped outside the box is recorded per row, discarded, and the row
/// renormalized (sub-Markov made Markov); rows that lost everything fall back
/// to uniform and are flagged.
struct TransitionMatrix {
    long n = 0;
    std::vector<std::vector<std::pair<long, double>>> rows;  // sorted by column
    std::vector<double> escaped_mass;                        // fraction per row
    std::vector<std::uint8_t> fallback_rows;
    bool absorbing_mode = false;

    double row_sum(long r) const;
};

struct UlamOptions {
    int samples_per_cell = 32;
    std::uint64_t seed = 0;
    /// Keep escaped mass in an extra absorbing state instead of renormalizing
    /// (diagnostic mode for invariance failures).
    bool absorbing_cell = false;
};

/// Discretized transfer operator: map stratified sample points of every cell
/// through one step of the iteration and tally destination cells. Sampling is
/// keyed by (seed, cell), so construction order cannot change the result.
TransitionMatrix build_transition(const DifferentialIteration& it, const GridPartition& part,
                                  const UlamOptions& opts = {});

/// Same, for an arbitrary map (used by map-style systems and tests).
TransitionMatrix build_transition_map(
    const std::function<std::vector<double>(std::span<const double>)>& step,
    const GridPartition& part, const UlamOptions& opts = {});

struct InvariantDensity {
    std::vector<double> weights;  // per cell, non-negative, sums to 1
    double residual = 0;          // ||wP - w||_1 at the accepted iterate
    long iterations = 0;
};

/// Leading left eigenvector by power iteration from the uniform density.
InvariantDensity invariant_density(const TransitionMatrix& tm, double tol = 1e-10,
                                   long max_iters = 200000);

/// One explicit application of the operator, for residual re-verification.
std::vector<double> apply_left(const TransitionMatrix& tm, std::span<const double> w);

/// Normalized visit counts of one orbit after burn-in (burn_in < 0 means the
/// default 10% of steps). Visits outside the box are counted separately.
struct OrbitHistogram {
    std::vector<double> density;
    double outside_fraction = 0;
};
OrbitHistogram orbit_histogram(const DifferentialIteration& it, std::span<const double> start,
                               long steps, const GridPartition& part, long burn_in = -1);

struct DoorstepReport {
    std::vector<long> first_visit_steps;  // -1 = never visited within horizon
    double t_delta = 0;                   // delta * latest first visit among visited cells
    double unvisited_fraction = 0;
    long horizon = 0;
};

/// First-visit times of every cell along one orbit.
DoorstepReport doorstep(const DifferentialIteration& it, std::span<const double> start,
                        const GridPartition& part, long horizon);

/// Map-driven variant (the step need not be polynomial).
DoorstepReport doorstep_map(const std::function<std::vector<double>(std::span<const double>)>& step,
                            std::span<const double> start, const GridPartition& part, long horizon,
                            double delta);

}  // namespace pfdyn
