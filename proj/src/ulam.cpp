#include "pfdyn/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pfdyn/rng.hpp"

namespace pfdyn {

GridPartition GridPartition::uniform(Box box, std::vector<int> cells_per_axis) {
    box.validate();
    if (static_cast<int>(cells_per_axis.size()) != box.dim())
        throw InputError("cells_per_axis length must match box dimension");
    GridPartition part;
    part.box = std::move(box);
    part.cells_per_axis = std::move(cells_per_axis);
    part.total_cells = 1;
    for (int c : part.cells_per_axis) {
        if (c < 1) throw InputError("cells_per_axis entries must be >= 1");
        part.total_cells *= c;
    }
    return part;
}

long GridPartition::cell_of(std::span<const double> p) const {
    long flat = 0, stride = 1;
    for (int i = 0; i < dim(); ++i) {
        if (p[i] < box.lo[i] || p[i] > box.hi[i]) return -1;
        const double rel = (p[i] - box.lo[i]) / (box.hi[i] - box.lo[i]);
        int c = static_cast<int>(rel * cells_per_axis[i]);
        if (c >= cells_per_axis[i]) c = cells_per_axis[i] - 1;  // upper boundary
        flat += stride * c;
        stride *= cells_per_axis[i];
    }
    return flat;
}

std::vector<int> GridPartition::cell_coords(long flat) const {
    std::vector<int> coords(dim());
    for (int i = 0; i < dim(); ++i) {
        coords[i] = static_cast<int>(flat % cells_per_axis[i]);
        flat /= cells_per_axis[i];
    }
    return coords;
}

std::vector<double> GridPartition::cell_center(long flat) const {
    const auto coords = cell_coords(flat);
    std::vector<double> center(dim());
    for (int i = 0; i < dim(); ++i) {
        const double w = (box.hi[i] - box.lo[i]) / cells_per_axis[i];
        center[i] = box.lo[i] + (coords[i] + 0.5) * w;
    }
    return center;
}

void GridPartition::cell_bounds(long flat, std::vector<double>& lo,
                                std::vector<double>& width) const {
    const auto coords = cell_coords(flat);
    lo.resize(dim());
    width.resize(dim());
    for (int i = 0; i < dim(); ++i) {
        width[i] = (box.hi[i] - box.lo[i]) / cells_per_axis[i];
        lo[i] = box.lo[i] + coords[i] * width[i];
    }
}

double TransitionMatrix::row_sum(long r) const {
    double s = 0;
    for (const auto& [c, p] : rows[r]) s += p;
    return s;
}

TransitionMatrix build_transition_map(
    const std::function<std::vector<double>(std::span<const double>)>& step,
    const GridPartition& part, const UlamOptions& opts) {
    if (opts.samples_per_cell < 1) throw InputError("samples_per_cell must be >= 1");
    const int d = part.dim();
    const long n = part.total_cells;
    const long absorbing = opts.absorbing_cell ? n : -1;

    TransitionMatrix tm;
    tm.n = opts.absorbing_cell ? n + 1 : n;
    tm.absorbing_mode = opts.absorbing_cell;
    tm.rows.resize(tm.n);
    tm.escaped_mass.assign(tm.n, 0.0);
    tm.fallback_rows.assign(tm.n, 0);

    // Stratify: q^d subcells with one jittered point each, remainder i.i.d.
    int strata = 1;
    while (std::pow(strata + 1, d) <= opts.samples_per_cell) ++strata;
    const long stratified = static_cast<long>(std::pow(strata, d));

    std::vector<double> lo, width;
    std::vector<double> point(d);
    for (long cell = 0; cell < n; ++cell) {
        CounterRng rng(opts.seed, static_cast<std::uint64_t>(cell) + 1);
        part.cell_bounds(cell, lo, width);
        std::map<long, long> counts;
        long escaped = 0;
        for (long s = 0; s < opts.samples_per_cell; ++s) {
            if (s < stratified) {
                long rem = s;
                for (int i = 0; i < d; ++i) {
                    const int sub = static_cast<int>(rem % strata);
                    rem /= strata;
                    point[i] = lo[i] + width[i] * (sub + rng.uniform01()) / strata;
                }
            } else {
                for (int i = 0; i < d; ++i) point[i] = lo[i] + width[i] * rng.uniform01();
            }
            long dest = -1;
            try {
                const std::vector<double> image = step(point);
                dest = part.cell_of(image);
            } catch (const OverflowError&) {
                dest = -1;
            }
            if (dest < 0) {
                ++escaped;
                if (absorbing >= 0) ++counts[absorbing];
            } else {
                ++counts[dest];
            }
        }

        tm.escaped_mass[cell] =
            static_cast<double>(escaped) / static_cast<double>(opts.samples_per_cell);
        const long kept = opts.absorbing_cell ? opts.samples_per_cell
                                              : opts.samples_per_cell - escaped;
        if (kept == 0) {
            // Everything escaped: uniform fallback keeps the chain stochastic.
            tm.fallback_rows[cell] = 1;
            auto& row = tm.rows[cell];
            row.reserve(tm.n);
            for (long c = 0; c < tm.n; ++c) row.push_back({c, 1.0 / static_cast<double>(tm.n)});
            continue;
        }
        auto& row = tm.rows[cell];
        row.reserve(counts.size());
        for (const auto& [c, cnt] : counts)
            row.push_back({c, static_cast<double>(cnt) / static_cast<double>(kept)});
    }
    if (opts.absorbing_cell) tm.rows[n].push_back({n, 1.0});
    return tm;
}

TransitionMatrix build_transition(const DifferentialIteration& it, const GridPartition& part,
                                  const UlamOptions& opts) {
    if (it.dim() != part.dim()) throw InputError("iteration and partition dimensions differ");
    return build_transition_map([&it](std::span<const double> p) { return it.step(p); }, part,
                                opts);
}

std::vector<double> apply_left(const TransitionMatrix& tm, std::span<const double> w) {
    if (static_cast<long>(w.size()) != tm.n) throw InputError("density length mismatch");
    std::vector<double> out(tm.n, 0.0);
    for (long r = 0; r < tm.n; ++r) {
        const double wr = w[r];
        if (wr == 0.0) continue;
        for (const auto& [c, p] : tm.rows[r]) out[c] += wr * p;
    }
    return out;
}

InvariantDensity invariant_density(const TransitionMatrix& tm, double tol, long max_iters) {
    if (tol <= 0) throw InputError("tolerance must be positive");
    std::vector<double> w(tm.n, 1.0 / static_cast<double>(tm.n));
    double residual = std::numeric_limits<double>::infinity();
    for (long iter = 1; iter <= max_iters; ++iter) {
        std::vector<double> next = apply_left(tm, w);
        double sum = 0;
        for (double v : next) sum += v;
        if (sum > 0)
            for (double& v : next) v /= sum;
        residual = 0;
        for (long i = 0; i < tm.n; ++i) residual += std::abs(next[i] - w[i]);
        w = std::move(next);
        if (residual < tol) {
            InvariantDensity out;
            out.weights = std::move(w);
            out.residual = residual;
            out.iterations = iter;
            return out;
        }
    }
    throw NumericalError("power iteration did not converge; last residual " +
                         std::to_string(residual));
}

OrbitHistogram orbit_histogram(const DifferentialIteration& it, std::span<const double> start,
                               long steps, const GridPartition& part, long burn_in) {
    if (steps < 1) throw InputError("steps must be >= 1");
    if (burn_in < 0) burn_in = steps / 10;
    OrbitHistogram hist;
    hist.density.assign(part.total_cells, 0.0);
    long inside = 0, outside = 0;
    orbit_visit(it, start, steps, [&](long k, std::span<const double> p) {
        if (k < burn_in) return;
        const long cell = part.cell_of(p);
        if (cell < 0) {
            ++outside;
        } else {
            hist.density[cell] += 1.0;
            ++inside;
        }
    });
    if (inside > 0)
        for (double& v : hist.density) v /= static_cast<double>(inside);
    hist.outside_fraction =
        static_cast<double>(outside) / static_cast<double>(inside + outside);
    return hist;
}

DoorstepReport doorstep_map(const std::function<std::vector<double>(std::span<const double>)>& step,
                            std::span<const double> start, const GridPartition& part, long horizon,
                            double delta) {
    if (horizon < 1) throw InputError("horizon must be >= 1");
    DoorstepReport rep;
    rep.horizon = horizon;
    rep.first_visit_steps.assign(part.total_cells, -1);
    std::vector<double> a(start.begin(), start.end());
    long remaining = part.total_cells;
    for (long k = 0; k <= horizon; ++k) {
        const long cell = part.cell_of(a);
        if (cell >= 0 && rep.first_visit_steps[cell] < 0) {
            rep.first_visit_steps[cell] = k;
            if (--remaining == 0) break;
        }
        if (k < horizon) a = step(a);
    }
    long latest = 0, unvisited = 0;
    for (long v : rep.first_visit_steps)
        if (v < 0)
            ++unvisited;
        else
            latest = std::max(latest, v);
    rep.t_delta = delta * static_cast<double>(latest);
    rep.unvisited_fraction =
        static_cast<double>(unvisited) / static_cast<double>(part.total_cells);
    return rep;
}

DoorstepReport doorstep(const DifferentialIteration& it, std::span<const double> start,
                        const GridPartition& part, long horizon) {
    if (it.dim() != part.dim()) throw InputError("iteration and partition dimensions differ");
    return doorstep_map([&it](std::span<const double> p) { return it.step(p); }, start, part,
                        horizon, it.delta[0]);
}

}  // namespace pfdyn
