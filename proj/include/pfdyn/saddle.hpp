#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pfdyn/difiter.hpp"
#include "pfdyn/series.hpp"

namespace pfdyn {

using Complex = std::complex<double>;

/// The functional gamma(a) = Phi(a) - sum_l n_l log a_l whose critical points
/// govern n-th derivative asymptotics. Phi = y . f(a, delta) when built from
/// an iteration; an arbitrary polynomial exponent is accepted for
/// transformed-coordinate studies. Critical equations are used in the
/// pole-free form a_l dGamma/da_l = 0 throughout, so no logarithm branch is
/// ever evaluated.
struct PlancherelRotach {
    CPolynomial exponent;  // Phi
    std::vector<Complex> y;
    std::vector<long> n;

    static PlancherelRotach from_iteration(const DifferentialIteration& it,
                                           std::span<const Complex> y, std::span<const long> n);
    static PlancherelRotach from_exponent(CPolynomial phi, std::span<const long> n);

    int dim() const { return exponent.dim(); }

    /// Residuals of the pole-free critical equations at a point.
    std::vector<Complex> critical_residual(std::span<const Complex> a) const;
};

struct CriticalPoint {
    std::vector<Complex> location;
    double gradient_residual = 0;  // re-evaluated after Newton, not the solver's value
    Eigen::MatrixXcd hessian;      // of gamma, complex symmetric
    std::vector<Complex> hessian_eigenvalues;
    bool degenerate = false;  // min |eig| < degeneracy_tol * max |eig|
};

struct CriticalPointOptions {
    int starts = 64;
    std::uint64_t seed = 0;
    int max_iters = 200;
    double tol = 1e-12;
    double merge_radius = 1e-8;
    double degeneracy_tol = 1e-9;
};

/// Complex Newton on a_l dGamma/da_l = 0 from seeded random starts in the
/// polydisk of radius 2 max(n_l/|y_l|), deduplicated, each with the Hessian
/// spectrum of gamma. Empty when no start converges.
std::vector<CriticalPoint> critical_points(const PlancherelRotach& pr,
                                           const CriticalPointOptions& opts = {});

struct HessianYF {
    Eigen::MatrixXd matrix;  // d^2 (y.F) / da^2 at the point, symmetric
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // orthonormal columns
    bool degenerate = false;
    bool constant_in_a = false;  // all second partials are constant polynomials
};

HessianYF hessian_yF(const PolyMap& field, std::span<const double> y, std::span<const double> at,
                     double degeneracy_tol = 1e-9);

/// The limit iteration of a partially linear field: identity on the a-block,
/// b-block rows gain tau * A-terms (argument shifted by alpha's b-part for the
/// iteration localized at another zero alpha; pass an empty alpha for the
/// origin). tau_weights has one entry per coordinate.
PolyMap asymptotic_iteration(const PartialLinearDecomposition& dec,
                             std::span<const double> tau_weights,
                             std::span<const double> alpha = {});

struct DominanceSample {
    std::vector<double> values;          // Re of the comparison term per point
    std::vector<int> signs;              // -1 / 0 / +1
    std::vector<std::size_t> near_zero;  // indices on the communication surface
};

/// Comparison term between the distribution families at the origin and at
/// another zero alpha of the field: Re( sum_{b-block rows} y_i tau_i
/// [A(.)beta]_i ) where beta is alpha's a-block part. Its sign selects the
/// dominant family; its zero set is the communication surface.
DominanceSample dominance(const PartialLinearDecomposition& dec, std::span<const double> alpha,
                          std::span<const Complex> y, std::span<const double> tau_weights,
                          std::span<const std::vector<double>> points, double zero_tol = 1e-9);

struct ResolventGap {
    Complex power_term;       // y^n
    Complex derivative_term;  // d^n exp(y.f)/da^n at 0
    Complex gap;              // power_term - derivative_term
    Complex normalized;       // gap / power_term when the power term is nonzero
};

ResolventGap resolvent_gap(const PlancherelRotach& pr, int cap = 36);

}  // namespace pfdyn
