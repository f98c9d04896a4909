#include "pfdyn/lorenz.hpp"

#include <cmath>

#include "pfdyn/hermite.hpp"
#include "pfdyn/series.hpp"

namespace pfdyn {

void LorenzParams::validate() const {
    if (!(sigma > 0) || !(rho > 0) || !(beta > 0))
        throw InputError("Lorenz parameters must be positive");
}

double LorenzParams::alpha() const {
    if (!three_fixed_points()) throw InputError("alpha requires rho > 1");
    return std::sqrt(beta * (rho - 1.0));
}

std::array<double, 3> LorenzParams::fixed_point_plus() const {
    const double a = alpha();
    return {a, a, a * a / beta};
}

std::array<double, 3> LorenzParams::fixed_point_minus() const {
    const double a = alpha();
    return {-a, -a, a * a / beta};
}

PolyMap lorenz_field(const LorenzParams& p) {
    p.validate();
    auto mono = [](double c, int ea, int eb, int ec) {
        return Monomial{c, {ea, eb, ec}};
    };
    std::vector<Polynomial> comps;
    comps.push_back(Polynomial::from_terms(3, {mono(-p.sigma, 1, 0, 0), mono(p.sigma, 0, 1, 0)}));
    comps.push_back(Polynomial::from_terms(
        3, {mono(p.rho, 1, 0, 0), mono(-1.0, 0, 1, 0), mono(-1.0, 1, 0, 1)}));
    comps.push_back(Polynomial::from_terms(3, {mono(-p.beta, 0, 0, 1), mono(1.0, 1, 1, 0)}));
    return PolyMap(3, std::move(comps));
}

double WingFrame::omega_for(WingCenter c) const {
    switch (c) {
        case WingCenter::origin: return omega_bar;
        case WingCenter::alpha_plus: return omega_bar_plus;
        case WingCenter::alpha_minus: return omega_bar_minus;
    }
    return omega_bar;
}

double WingFrame::linear_part(std::span<const double> point) const {
    return omega_bar * point[0] + s * point[1] + t * point[2];
}

double WingFrame::quadratic_part(std::span<const double> point) const {
    return point[0] * (t * point[1] - s * point[2]);
}

Eigen::Matrix3d WingFrame::q_matrix() const {
    Eigen::Matrix3d q;
    q << 0, t, -s, t, 0, 0, -s, 0, 0;
    return q;
}

WingFrame wing_frame(const LorenzParams& p, double r, double s, double t) {
    p.validate();
    WingFrame f;
    f.params = p;
    f.r = r;
    f.s = s;
    f.t = t;
    f.mu = std::sqrt(s * s + t * t);
    if (!(f.mu > 0)) throw InputError("wing frame requires (s, t) != (0, 0)");

    f.omega_bar = r + s * p.rho;
    const double a = p.alpha();
    const double base = r + s * p.rho + s * a * a / p.beta;
    f.omega_bar_plus = base + t * a;
    f.omega_bar_minus = base - t * a;

    // Columns: eigenvectors of q_matrix for eigenvalues (0, -mu, +mu).
    const double den = f.mu * std::sqrt(2.0);
    f.T << 0, f.mu / den, f.mu / den,
        s * std::sqrt(2.0) / den, -t / den, t / den,
        t * std::sqrt(2.0) / den, s / den, -s / den;
    return f;
}

namespace {

CPolynomial one_var_poly(std::complex<double> linear, std::complex<double> quadratic) {
    std::vector<CMonomial> terms;
    if (linear != std::complex<double>(0.0)) terms.push_back({linear, {1}});
    if (quadratic != std::complex<double>(0.0)) terms.push_back({quadratic, {2}});
    return CPolynomial::from_terms(1, std::move(terms));
}

std::complex<double> ipow(int n) {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((n % 4) + 4) % 4];
}

}  // namespace

GammaSplit gamma_split(const WingFrame& frame, int n, WingCenter center) {
    if (n < 1) throw InputError("gamma split needs n >= 1");
    const double omega = frame.omega_for(center);
    const double mu = frame.mu;
    const double lin = omega / std::sqrt(2.0);

    GammaSplit split;
    split.n = n;
    split.hermite_argument_scale = 2.0 * std::sqrt(2.0 * mu);
    const std::vector<int> order{n};
    const double mu_half_n = std::pow(mu, n / 2.0);
    const std::complex<double> arg(omega / split.hermite_argument_scale, 0.0);

    split.g1.exponent = one_var_poly(lin, -mu);
    split.g1.series_value = series_exp_derivative(split.g1.exponent, order, n).value;
    split.g1.closed_form = hermite_eval(n, arg) * mu_half_n;

    split.g2.exponent = one_var_poly(mu, 0.0);
    split.g2.series_value = series_exp_derivative(split.g2.exponent, order, n).value;
    split.g2.closed_form = std::pow(mu, n);

    split.g3.exponent = one_var_poly(lin, mu);
    split.g3.series_value = series_exp_derivative(split.g3.exponent, order, n).value;
    split.g3.closed_form = hermite_eval(n, arg / std::complex<double>(0.0, 1.0)) * ipow(n) * mu_half_n;

    return split;
}

ClosedFormGap resolvent_gap_closed_form(const WingFrame& frame, int n, WingCenter center) {
    if (n < 1 || n > 200) throw InputError("closed-form gap supported for 1 <= n <= 200");
    const double omega = frame.omega_for(center);
    const double mu = frame.mu;

    ClosedFormGap out;
    out.hermite_argument_scale = 2.0 * std::sqrt(2.0 * mu);
    out.power_term = std::pow(mu, n) * std::pow(frame.r * frame.r / 2.0, n);

    const std::complex<double> x(omega / out.hermite_argument_scale, 0.0);
    const std::complex<double> xi = x / std::complex<double>(0.0, 1.0);
    out.hermite_term = std::pow(mu, 2 * n) * ipow(n) * hermite_eval(n, x) * hermite_eval(n, xi);
    out.gap = out.power_term - out.hermite_term;
    return out;
}

OvalFamily oval_family(const WingFrame& frame, int hermite_n, WingCenter center) {
    if (hermite_n < 2) throw InputError("oval family needs Hermite degree >= 2");
    OvalFamily fam;
    fam.center = center;
    switch (center) {
        case WingCenter::origin: fam.center_point = {0, 0, 0}; break;
        case WingCenter::alpha_plus: fam.center_point = frame.params.fixed_point_plus(); break;
        case WingCenter::alpha_minus: fam.center_point = frame.params.fixed_point_minus(); break;
    }
    fam.plane_c = frame.omega_for(center);

    const auto zeros = hermite_zeros(hermite_n, HermiteScaling::by_largest_zero);
    const auto chi = scaled_zeros(zeros);
    for (double z : chi) {
        fam.chi.push_back(z);
        if (z == 0.0) {
            fam.degenerate.push_back(1);
            fam.radius.push_back(0.0);
        } else {
            fam.degenerate.push_back(0);
            const double half = fam.plane_c / (2.0 * z);
            fam.radius.push_back(half * half);
        }
    }
    return fam;
}

double communication_value(const LorenzParams& p, double s, double t,
                           std::span<const double> point) {
    return s * (p.rho - point[2]) + t * point[1];
}

CrossingStats communication_crossings(const LorenzParams& p, double s, double t,
                                      const DifferentialIteration& it,
                                      std::span<const double> start, long steps, long burn_in) {
    CrossingStats stats;
    stats.steps = steps;
    int last_sign = 0;
    orbit_visit(it, start, steps, [&](long k, std::span<const double> point) {
        if (k < burn_in) return;
        const double v = communication_value(p, s, t, point);
        const int sign = (v > 0) - (v < 0);
        if (sign != 0) {
            if (last_sign != 0 && sign != last_sign) ++stats.crossings;
            last_sign = sign;
        }
    });
    stats.rate = steps > 0 ? static_cast<double>(stats.crossings) / static_cast<double>(steps) : 0;
    return stats;
}

PolyMap hamilton_build(const PolyMap& hamiltonian, std::span<const double> masses) {
    if (hamiltonian.dim_out() != 1) throw InputError("Hamiltonian must be a scalar map");
    const Polynomial& h = hamiltonian.component(0);

    if (!masses.empty()) {
        // Potential form: h = U(q_1..q_m) on m variables, field on (p, q).
        const int m = h.dim();
        if (static_cast<int>(masses.size()) != m)
            throw InputError("one mass per coordinate required");
        for (double mass : masses)
            if (!(mass > 0)) throw InputError("masses must be positive");
        const int d = 2 * m;
        std::vector<Polynomial> comps;
        for (int i = 0; i < m; ++i) {
            // dp_i/dt = -dU/dq_i, lifted from m to 2m variables (q's last).
            const Polynomial du = h.derivative(i);
            std::vector<Monomial> terms;
            for (const auto& t : du.terms()) {
                std::vector<int> pw(d, 0);
                for (int j = 0; j < m; ++j) pw[m + j] = t.powers[j];
                terms.push_back({-t.coef, std::move(pw)});
            }
            comps.push_back(Polynomial::from_terms(d, std::move(terms)));
        }
        for (int i = 0; i < m; ++i)
            comps.push_back(Polynomial::variable(d, i).scaled(1.0 / masses[i]));
        return PolyMap(d, std::move(comps));
    }

    const int d = h.dim();
    if (d % 2 != 0) throw InputError("Hamiltonian needs an even number of variables (p, q)");
    const int m = d / 2;
    std::vector<Polynomial> comps;
    for (int i = 0; i < m; ++i) comps.push_back(h.derivative(m + i).scaled(-1.0));  // -dH/dq
    for (int i = 0; i < m; ++i) comps.push_back(h.derivative(i));                   // +dH/dp
    return PolyMap(d, std::move(comps));
}

}  // namespace pfdyn
