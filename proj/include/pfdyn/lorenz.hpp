#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <span>
#include <vector>

#include "pfdyn/difiter.hpp"
#include "pfdyn/polymap.hpp"

namespace pfdyn {

/// Parameters of da/dt = sigma(b-a), db/dt = rho a - b - ac, dc/dt = -beta c + ab.
struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;

    void validate() const;
    bool three_fixed_points() const { return rho > 1.0; }
    /// alpha = sqrt(beta (rho - 1)); wings sit at (+-alpha, +-alpha, alpha^2/beta).
    double alpha() const;
    std::array<double, 3> fixed_point_plus() const;
    std::array<double, 3> fixed_point_minus() const;
};

PolyMap lorenz_field(const LorenzParams& p);

enum class WingCenter { origin, alpha_plus, alpha_minus };

/// The covector frame of the quadratic form tb a - sc a: mu is its positive
/// eigenvalue, T the orthogonal eigenvector matrix with columns for the
/// eigenvalues (0, -mu, +mu), and omega_bar the linear weight r + s rho with
/// its two wing-shifted variants.
struct WingFrame {
    LorenzParams params;
    double r = 0, s = 0, t = 0;
    double mu = 0;
    double omega_bar = 0;        // r + s rho
    double omega_bar_plus = 0;   // r + s rho + s alpha^2/beta + t alpha
    double omega_bar_minus = 0;  // r + s rho + s alpha^2/beta - t alpha
    Eigen::Matrix3d T;

    double omega_for(WingCenter c) const;

    /// Linear part L(a1) = omega_bar a1 + s b + t c of (r,s,t).G.
    double linear_part(std::span<const double> point) const;
    /// Quadratic part Q(a1) = a1 (t b - s c).
    double quadratic_part(std::span<const double> point) const;
    /// The quadratic-form matrix [[0,t,-s],[t,0,0],[-s,0,0]].
    Eigen::Matrix3d q_matrix() const;
};

WingFrame wing_frame(const LorenzParams& p, double r, double s, double t);

/// One 1-D factor of the split functional: its polynomial exponent, the
/// series-engine derivative value, and the closed form pinned against it.
struct GammaFactor {
    CPolynomial exponent;               // 1-D polynomial
    std::complex<double> series_value;  // d^n exp(exponent) at 0, series engine
    std::complex<double> closed_form;
};

struct GammaSplit {
    int n = 0;
    GammaFactor g1;  // omega u / sqrt(2) - mu u^2
    GammaFactor g2;  // mu v
    GammaFactor g3;  // omega w / sqrt(2) + mu w^2
    /// Hermite arguments are omega / hermite_argument_scale (and /i for g3);
    /// the denominator 2 sqrt(2 mu) is pinned by the series oracle.
    double hermite_argument_scale = 0;
};

GammaSplit gamma_split(const WingFrame& frame, int n, WingCenter center = WingCenter::origin);

/// Closed-form resolvent gap in the rotated base, with the oracle-pinned
/// Hermite scaling: mu^n (r^2/2)^n - mu^{2n} i^n H_n(x) H_n(x/i),
/// x = omega / (2 sqrt(2 mu)).
struct ClosedFormGap {
    std::complex<double> power_term;
    std::complex<double> hermite_term;
    std::complex<double> gap;
    double hermite_argument_scale = 0;
};

ClosedFormGap resolvent_gap_closed_form(const WingFrame& frame, int n,
                                        WingCenter center = WingCenter::origin);

/// Family of plane-cylinder intersection ovals indexed by scaled Hermite
/// zeros chi: radius (c / 2 chi)^2 in the plane c = omega variant.
struct OvalFamily {
    WingCenter center = WingCenter::origin;
    std::array<double, 3> center_point{};
    double plane_c = 0;
    std::vector<double> chi;
    std::vector<double> radius;             // 0 for degenerate entries
    std::vector<std::uint8_t> degenerate;   // chi == 0
};

OvalFamily oval_family(const WingFrame& frame, int hermite_n, WingCenter center);

/// s (rho - c) + t b, whose zero set separates the wing families.
double communication_value(const LorenzParams& p, double s, double t,
                           std::span<const double> point);

struct CrossingStats {
    long crossings = 0;
    double rate = 0;  // crossings per step
    long steps = 0;
};

/// Count sign changes of the communication value along an orbit.
CrossingStats communication_crossings(const LorenzParams& p, double s, double t,
                                      const DifferentialIteration& it,
                                      std::span<const double> start, long steps, long burn_in = 0);

/// Symplectic field of a scalar Hamiltonian on (p_1..p_m, q_1..q_m):
/// dp/dt = -dH/dq, dq/dt = dH/dp. With masses given, H is read as a potential
/// U(q_1..q_m) and the field is (-dU/dq, p/m) on the doubled space.
PolyMap hamilton_build(const PolyMap& hamiltonian, std::span<const double> masses = {});

}  // namespace pfdyn
