#include "pfdyn/equilibria.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace pfdyn {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::attractive: return "attractive";
        case Classification::repulsive: return "repulsive";
        case Classification::mixed: return "mixed";
        case Classification::marginal: return "marginal";
    }
    return "unknown";
}

namespace {

double norm2(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Damped Newton from one start. Returns true on convergence.
bool newton_from(const PolyMap& field, const PolyJacobian& jac, std::vector<double>& x,
                 const NewtonOptions& opts) {
    const int d = field.dim_in();
    std::vector<double> fx = field.evaluate(x);
    double fnorm = norm2(fx);
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        if (fnorm < opts.tol) return true;
        Eigen::MatrixXd j = jac.evaluate(x);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
        // PartialPivLU has no rank test; reject steps from near-singular
        // systems by the magnitude of the solution instead.
        Eigen::VectorXd rhs(d);
        for (int i = 0; i < d; ++i) rhs(i) = fx[i];
        Eigen::VectorXd dx = lu.solve(rhs);
        if (!dx.allFinite() || dx.norm() > 1e12) return false;

        double damping = 1.0;
        for (int half = 0; half < 30; ++half) {
            std::vector<double> trial(d);
            for (int i = 0; i < d; ++i) trial[i] = x[i] - damping * dx(i);
            std::vector<double> ft = field.evaluate(trial);
            const double tn = norm2(ft);
            if (tn < fnorm || damping < 1e-8) {
                x = std::move(trial);
                fx = std::move(ft);
                fnorm = tn;
                break;
            }
            damping *= 0.5;
        }
    }
    return fnorm < opts.tol;
}

}  // namespace

std::vector<std::complex<double>> jacobian_eigenvalues(const PolyMap& field,
                                                       std::span<const double> at) {
    Eigen::MatrixXd j = field.jacobian().evaluate(at);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(j);
    std::vector<std::complex<double>> eigs(static_cast<std::size_t>(j.rows()));
    for (int i = 0; i < j.rows(); ++i) eigs[i] = solver.eigenvalues()(i);
    std::sort(eigs.begin(), eigs.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eigs;
}

Classification classify(std::span<const std::complex<double>> eigenvalues, double delta,
                        double tol) {
    bool all_inside = true, all_outside = true, on_circle = false;
    for (auto lambda : eigenvalues) {
        const double mod = std::abs(1.0 + delta * lambda);
        if (std::abs(mod - 1.0) <= tol) on_circle = true;
        if (mod >= 1.0) all_inside = false;
        if (mod <= 1.0) all_outside = false;
    }
    if (on_circle) return Classification::marginal;
    if (all_inside) return Classification::attractive;
    if (all_outside) return Classification::repulsive;
    return Classification::mixed;
}

std::vector<Equilibrium> find_zeros(const PolyMap& field, const Box& box, int grid_density,
                                    double delta, const NewtonOptions& opts,
                                    long* abandoned_starts) {
    if (!field.is_square()) throw InputError("find_zeros requires a square field");
    box.validate();
    const int d = field.dim_in();
    if (box.dim() != d) throw InputError("box dimension does not match field");
    if (grid_density < 1) throw InputError("grid_density must be >= 1");

    const PolyJacobian jac = field.jacobian();
    std::vector<std::vector<double>> found;
    long abandoned = 0;

    long total = 1;
    for (int i = 0; i < d; ++i) total *= grid_density;
    for (long idx = 0; idx < total; ++idx) {
        std::vector<double> x(d);
        long rem = idx;
        for (int i = 0; i < d; ++i) {
            const int cell = static_cast<int>(rem % grid_density);
            rem /= grid_density;
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * (cell + 0.5) / grid_density;
        }
        if (!newton_from(field, jac, x, opts)) {
            ++abandoned;
            continue;
        }
        if (norm2(field.evaluate(x)) > opts.accept_residual) continue;
        found.push_back(std::move(x));
    }
    if (abandoned_starts) *abandoned_starts = abandoned;

    // Deduplicate: zeros closer than merge_radius count as one (and are
    // flagged, since isolated zeros are assumed by the analysis).
    std::sort(found.begin(), found.end(), lex_less);
    std::vector<Equilibrium> out;
    for (const auto& x : found) {
        bool merged = false;
        for (auto& eq : out) {
            double dist = 0;
            for (int i = 0; i < d; ++i) dist += (x[i] - eq.location[i]) * (x[i] - eq.location[i]);
            if (std::sqrt(dist) < opts.merge_radius) {
                merged = true;
                if (std::sqrt(dist) > 0) eq.possibly_non_isolated = true;
                break;
            }
        }
        if (merged) continue;
        Equilibrium eq;
        eq.location = x;
        eq.residual = norm2(field.evaluate(x));
        eq.eigenvalues = jacobian_eigenvalues(field, x);
        eq.delta_used = delta;
        for (auto lambda : eq.eigenvalues) eq.multipliers.push_back(1.0 + delta * lambda);
        eq.classification = classify(eq.eigenvalues, delta);
        out.push_back(std::move(eq));
    }
    return out;
}

FaultReport lemma1_analysis(std::span<const std::complex<double>> eigenvalues,
                            std::span<const double> tau_weights, double fault_tol) {
    if (eigenvalues.size() != tau_weights.size())
        throw InputError("one tau weight per eigenvalue required");
    FaultReport rep;
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const double lt = eigenvalues[i].real() * tau_weights[i];
        rep.lambda_tau.push_back(lt);
        rep.aggregate += lt;
        if (std::abs(lt) < fault_tol)
            rep.fault_indices.push_back(static_cast<int>(i));
        else if (lt > 0)
            has_pos = true;
        else
            has_neg = true;
    }
    if (std::abs(rep.aggregate) < fault_tol)
        rep.verdict = FaultVerdict::fault;
    else if (has_pos && has_neg)
        rep.verdict = FaultVerdict::mixed_signs;
    else if (rep.aggregate > 0)
        rep.verdict = FaultVerdict::distribution_dominates;
    else
        rep.verdict = FaultVerdict::fixed_point_dominates;
    return rep;
}

namespace {

/// det of a matrix whose entries are polynomials in one variable (coefficient
/// vectors, ascending powers), by Laplace expansion along the first row.
std::vector<double> poly_det(const std::vector<std::vector<std::vector<double>>>& m) {
    const std::size_t n = m.size();
    auto mul = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> out(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    auto add = [](std::vector<double> a, const std::vector<double>& b, double sign) {
        if (b.size() > a.size()) a.resize(b.size(), 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
        return a;
    };
    if (n == 1) return m[0][0];
    std::vector<double> det{0.0};
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::vector<double>>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::vector<double>> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            minor.push_back(std::move(row));
        }
        det = add(std::move(det), mul(m[0][c], poly_det(minor)), (c % 2 == 0) ? 1.0 : -1.0);
    }
    return det;
}

}  // namespace

std::vector<double> characteristic_polynomial(const PolyMap& field, std::span<const double> at) {
    if (!field.is_square()) throw InputError("characteristic polynomial requires a square field");
    const int d = field.dim_in();
    Eigen::MatrixXd j = field.jacobian().evaluate(at);

    if (d <= 4) {
        std::vector<std::vector<std::vector<double>>> m(
            d, std::vector<std::vector<double>>(d));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                m[r][c] = {j(r, c)};
                if (r == c) m[r][c].push_back(-1.0);  // J - lambda I
            }
        auto det = poly_det(m);
        det.resize(d + 1, 0.0);
        return det;
    }

    // Larger systems: rebuild the polynomial from the spectrum,
    // det(J - lambda I) = prod (lambda_i - lambda).
    auto eigs = jacobian_eigenvalues(field, at);
    std::vector<std::complex<double>> coeffs{1.0};
    for (auto lambda : eigs) {
        std::vector<std::complex<double>> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i] * lambda;  // multiply by (lambda_i - x)
            next[i + 1] -= coeffs[i];
        }
        coeffs = std::move(next);
    }
    std::vector<double> real_coeffs(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) real_coeffs[i] = coeffs[i].real();
    return real_coeffs;
}

std::complex<double> eval_poly_coeffs(std::span<const double> coeffs, std::complex<double> x) {
    std::complex<double> v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return v;
}

}  // namespace pfdyn
