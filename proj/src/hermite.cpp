#include "pfdyn/hermite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "pfdyn/errors.hpp"

namespace pfdyn {

namespace {

template <typename T>
T hermite_recurrence(int n, T x) {
    if (n == 0) return T(1);
    T hm = T(1);          // H_0
    T h = 2.0 * x;        // H_1
    for (int k = 1; k < n; ++k) {
        T next = 2.0 * x * h - 2.0 * static_cast<double>(k) * hm;
        hm = h;
        h = next;
    }
    return h;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> jacobi_eigen(int n) {
    // Jacobi matrix of the physicists' Hermite family: zero diagonal,
    // off-diagonal sqrt(k/2).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(k / 2.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(jacobi);
}

}  // namespace

double hermite_eval(int n, double x) {
    if (n < 0) throw InputError("Hermite degree must be >= 0");
    return hermite_recurrence(n, x);
}

std::complex<double> hermite_eval(int n, std::complex<double> x) {
    if (n < 0) throw InputError("Hermite degree must be >= 0");
    return hermite_recurrence(n, x);
}

HermiteZeroSet hermite_zeros(int n, HermiteScaling scaling) {
    if (n < 1 || n > 500) throw InputError("Hermite zeros supported for 1 <= n <= 500");
    auto es = jacobi_eigen(n);

    HermiteZeroSet zs;
    zs.n = n;
    zs.scaling = scaling;
    zs.zeros.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = es.eigenvalues()(i);
        // One Newton polish: H_n' = 2n H_{n-1}.
        const double deriv = 2.0 * n * hermite_eval(n - 1, z);
        if (deriv != 0.0) z -= hermite_eval(n, z) / deriv;
        zs.zeros[i] = z;
    }
    std::sort(zs.zeros.begin(), zs.zeros.end());
    return zs;
}

std::vector<double> scaled_zeros(const HermiteZeroSet& zs) {
    std::vector<double> out = zs.zeros;
    double scale = 1.0;
    if (zs.scaling == HermiteScaling::by_largest_zero) {
        const double m = std::max(std::abs(out.front()), std::abs(out.back()));
        scale = (m > 0) ? m : 1.0;
    } else {
        scale = std::sqrt(2.0 * zs.n);
    }
    for (double& z : out) z /= scale;
    return out;
}

double gauss_hermite_weight_sum(int n) {
    if (n < 1 || n > 500) throw InputError("Hermite weights supported for 1 <= n <= 500");
    auto es = jacobi_eigen(n);
    const double mu0 = std::sqrt(M_PI);  // integral of exp(-x^2)
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const double first = es.eigenvectors()(0, i);
        sum += mu0 * first * first;
    }
    return sum;
}

double ks_distance(std::span<const double> sorted_sample,
                   const std::function<double(double)>& cdf) {
    if (sorted_sample.empty()) throw InputError("KS distance of an empty sample");
    const double n = static_cast<double>(sorted_sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
        const double f = cdf(sorted_sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

LawComparison law_comparison(const HermiteZeroSet& zs) {
    if (zs.n < 10) throw InputError("law comparison needs degree >= 10");
    const std::vector<double> sample = scaled_zeros(zs);
    LawComparison cmp;
    cmp.n = zs.n;
    cmp.ks_arcsine = ks_distance(sample, beta_half_cdf_symmetric);
    cmp.ks_semicircle = ks_distance(sample, semicircle_cdf);
    return cmp;
}

double beta_half_cdf(double x) {
    if (x < 0.0 || x > 1.0) throw InputError("beta(1/2,1/2) CDF argument outside [0,1]");
    return (2.0 / M_PI) * std::asin(std::sqrt(x));
}

double beta_half_cdf_symmetric(double x) {
    if (x < -1.0 || x > 1.0) throw InputError("arcsine CDF argument outside [-1,1]");
    return 0.5 + std::asin(x) / M_PI;
}

double semicircle_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / M_PI;
}

}  // namespace pfdyn
