#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace pfdyn {

/// Physicists' Hermite polynomial H_n(x) via the three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}. The convention matters: the probabilists'
/// polynomials would silently rescale every argument downstream.
double hermite_eval(int n, double x);
std::complex<double> hermite_eval(int n, std::complex<double> x);

enum class HermiteScaling { by_largest_zero, by_sqrt_2n };

struct HermiteZeroSet {
    int n = 0;
    std::vector<double> zeros;  // sorted ascending
    HermiteScaling scaling = HermiteScaling::by_largest_zero;
};

/// Zeros of H_n (1 <= n <= 500) as eigenvalues of the Jacobi matrix, each
/// polished by one Newton step on the recurrence evaluation.
HermiteZeroSet hermite_zeros(int n, HermiteScaling scaling = HermiteScaling::by_largest_zero);

/// Zeros mapped into [-1, 1] by the chosen normalization.
std::vector<double> scaled_zeros(const HermiteZeroSet& zs);

/// Sum of the Gauss-Hermite quadrature weights from the same Jacobi
/// eigen-decomposition; equals sqrt(pi) when the construction is right.
double gauss_hermite_weight_sum(int n);

struct LawComparison {
    double ks_arcsine = 0;
    double ks_semicircle = 0;
    int n = 0;
};

/// Exact Kolmogorov-Smirnov distance of a sorted sample against a CDF.
double ks_distance(std::span<const double> sorted_sample,
                   const std::function<double(double)>& cdf);

/// KS distances of the scaled zero set against the arcsine law (beta(1/2,1/2)
/// transported to [-1,1]) and against the semicircle law.
LawComparison law_comparison(const HermiteZeroSet& zs);

/// CDF of beta(1/2,1/2) on [0,1]: (2/pi) asin(sqrt(x)).
double beta_half_cdf(double x);

/// The same law transported to [-1,1]: 1/2 + asin(x)/pi.
double beta_half_cdf_symmetric(double x);

/// Semicircle CDF on [-1,1].
double semicircle_cdf(double x);

}  // namespace pfdyn
