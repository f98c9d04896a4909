#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pfdyn/difiter.hpp"
#include "pfdyn/polymap.hpp"

namespace pfdyn {

enum class Classification { attractive, repulsive, mixed, marginal };

std::string to_string(Classification c);

/// A zero of the field with the spectrum of its Jacobian and the resulting
/// behaviour of the iteration a -> a + delta F(a).
struct Equilibrium {
    std::vector<double> location;
    double residual = 0;  // ||F(location)||, re-checked by direct evaluation
    std::vector<std::complex<double>> eigenvalues;   // sorted by (Re, Im)
    std::vector<std::complex<double>> multipliers;   // 1 + delta * lambda
    double delta_used = 0;
    Classification classification = Classification::marginal;
    bool possibly_non_isolated = false;
};

struct NewtonOptions {
    int max_iters = 100;
    double tol = 1e-13;          // absolute tolerance on ||F||
    double merge_radius = 1e-8;  // converged points closer than this are one zero
    double accept_residual = 1e-12;
};

/// Damped Newton iteration from a grid_density^d lattice of starts inside the
/// box. Converged points are deduplicated and reported sorted
/// lexicographically by location. Starts whose Jacobian goes singular are
/// abandoned (counted in `abandoned_starts` when provided).
std::vector<Equilibrium> find_zeros(const PolyMap& field, const Box& box, int grid_density,
                                    double delta, const NewtonOptions& opts = {},
                                    long* abandoned_starts = nullptr);

/// Jacobian spectrum at a point, sorted by (Re, Im).
std::vector<std::complex<double>> jacobian_eigenvalues(const PolyMap& field,
                                                       std::span<const double> at);

/// attractive iff all |1 + delta*lambda| < 1, repulsive iff all > 1; a
/// multiplier on the unit circle (within tol) makes the point marginal,
/// anything else mixed.
Classification classify(std::span<const std::complex<double>> eigenvalues, double delta,
                        double tol = 1e-9);

enum class FaultVerdict { distribution_dominates, fixed_point_dominates, fault, mixed_signs };

/// Per-eigenvalue products Re(lambda)*tau and their aggregate, with the
/// eigenvalues sitting on the fault plane lambda*tau = 0 flagged.
struct FaultReport {
    std::vector<double> lambda_tau;   // Re(lambda_l) * tau weight of coordinate l
    double aggregate = 0;             // sum, the ODE criterion
    std::vector<int> fault_indices;   // |lambda_tau| < fault_tol
    FaultVerdict verdict = FaultVerdict::fault;
};

/// tau_weights pairs each eigenvalue (by index) with the direction weight of
/// its block; for an ODE all weights are 1.
FaultReport lemma1_analysis(std::span<const std::complex<double>> eigenvalues,
                            std::span<const double> tau_weights, double fault_tol = 1e-9);

/// Coefficients (ascending powers of lambda) of det(J(at) - lambda I):
/// exact cofactor expansion for d <= 4, eigenvalue product above.
std::vector<double> characteristic_polynomial(const PolyMap& field, std::span<const double> at);

/// Evaluate a coefficient sequence at a (complex) argument.
std::complex<double> eval_poly_coeffs(std::span<const double> coeffs, std::complex<double> x);

}  // namespace pfdyn
