#include "pfdyn/saddle.hpp"

#include <algorithm>
#include <cmath>

#include "pfdyn/rng.hpp"

namespace pfdyn {

PlancherelRotach PlancherelRotach::from_iteration(const DifferentialIteration& it,
                                                  std::span<const Complex> y,
                                                  std::span<const long> n) {
    const int d = it.dim();
    if (static_cast<int>(y.size()) != d || static_cast<int>(n.size()) != d)
        throw InputError("y and n must have the iteration's dimension");
    for (long nl : n)
        if (nl < 1) throw InputError("derivative orders n must be >= 1");

    // Phi = y.(a + delta F(a)) with per-coordinate deltas folded in.
    std::vector<CMonomial> terms;
    for (int i = 0; i < d; ++i) {
        std::vector<int> pw(d, 0);
        pw[i] = 1;
        terms.push_back({y[i], pw});
        for (const auto& t : it.field.component(i).terms())
            terms.push_back({y[i] * it.delta_for(i) * t.coef, t.powers});
    }
    PlancherelRotach pr;
    pr.exponent = CPolynomial::from_terms(d, std::move(terms));
    pr.y.assign(y.begin(), y.end());
    pr.n.assign(n.begin(), n.end());
    return pr;
}

PlancherelRotach PlancherelRotach::from_exponent(CPolynomial phi, std::span<const long> n) {
    if (static_cast<int>(n.size()) != phi.dim())
        throw InputError("n must have the exponent's dimension");
    PlancherelRotach pr;
    pr.exponent = std::move(phi);
    pr.n.assign(n.begin(), n.end());
    return pr;
}

std::vector<Complex> PlancherelRotach::critical_residual(std::span<const Complex> a) const {
    const int d = dim();
    std::vector<Complex> res(d);
    for (int l = 0; l < d; ++l)
        res[l] = a[l] * exponent.derivative(l)(a) - static_cast<double>(n[l]);
    return res;
}

namespace {

double cnorm(std::span<const Complex> v) {
    double s = 0;
    for (auto z : v) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace

std::vector<CriticalPoint> critical_points(const PlancherelRotach& pr,
                                           const CriticalPointOptions& opts) {
    const int d = pr.dim();

    // g_l = a_l dPhi/da_l - n_l and its Jacobian, all as polynomials.
    std::vector<CPolynomial> g;
    std::vector<CPolynomial> jac;
    for (int l = 0; l < d; ++l) {
        CPolynomial gl = CPolynomial::variable(d, l) * pr.exponent.derivative(l) -
                         CPolynomial::constant(d, static_cast<double>(pr.n[l]));
        for (int m = 0; m < d; ++m) jac.push_back(gl.derivative(m));
        g.push_back(std::move(gl));
    }

    double radius = 0;
    for (int l = 0; l < d; ++l) {
        const double yl = pr.y.empty() ? 1.0 : std::abs(pr.y[l]);
        radius = std::max(radius, 2.0 * static_cast<double>(pr.n[l]) / std::max(yl, 1e-30));
    }
    if (!(radius > 0) || !std::isfinite(radius)) radius = 2.0;

    std::vector<CriticalPoint> found;
    for (int s = 0; s < opts.starts; ++s) {
        CounterRng rng(opts.seed, static_cast<std::uint64_t>(s) + 1);
        std::vector<Complex> a(d);
        for (int i = 0; i < d; ++i) {
            const double r = radius * std::sqrt(rng.uniform01());
            const double th = 2.0 * M_PI * rng.uniform01();
            a[i] = Complex(r * std::cos(th), r * std::sin(th));
        }

        std::vector<Complex> ga(d);
        for (int l = 0; l < d; ++l) ga[l] = g[l](a);
        double gnorm = cnorm(ga);
        bool ok = false;
        for (int iter = 0; iter < opts.max_iters; ++iter) {
            if (gnorm < opts.tol) {
                ok = true;
                break;
            }
            Eigen::MatrixXcd J(d, d);
            Eigen::VectorXcd rhs(d);
            for (int l = 0; l < d; ++l) {
                rhs(l) = ga[l];
                for (int m = 0; m < d; ++m) J(l, m) = jac[static_cast<std::size_t>(l) * d + m](a);
            }
            Eigen::VectorXcd dx = J.partialPivLu().solve(rhs);
            if (!dx.allFinite() || dx.norm() > 1e14) break;

            double damping = 1.0;
            for (int half = 0; half < 20; ++half) {
                std::vector<Complex> trial(d);
                for (int i = 0; i < d; ++i) trial[i] = a[i] - damping * dx(i);
                std::vector<Complex> gt(d);
                for (int l = 0; l < d; ++l) gt[l] = g[l](trial);
                const double tn = cnorm(gt);
                if (tn < gnorm || damping < 1e-6) {
                    a = std::move(trial);
                    ga = std::move(gt);
                    gnorm = tn;
                    break;
                }
                damping *= 0.5;
            }
        }
        if (!ok && gnorm >= opts.tol) continue;

        bool duplicate = false;
        for (const auto& cp : found) {
            double dist = 0;
            for (int i = 0; i < d; ++i) dist += std::norm(a[i] - cp.location[i]);
            if (std::sqrt(dist) < opts.merge_radius) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;

        CriticalPoint cp;
        cp.location = a;
        cp.gradient_residual = cnorm(pr.critical_residual(a));

        // Hessian of gamma = Phi - sum n_l log a_l.
        cp.hessian = Eigen::MatrixXcd(d, d);
        for (int l = 0; l < d; ++l)
            for (int m = 0; m < d; ++m) {
                Complex h = pr.exponent.derivative(l).derivative(m)(a);
                if (l == m) h += static_cast<double>(pr.n[l]) / (a[l] * a[l]);
                cp.hessian(l, m) = h;
            }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(cp.hessian);
        double min_abs = std::numeric_limits<double>::infinity(), max_abs = 0;
        for (int i = 0; i < d; ++i) {
            const Complex ev = es.eigenvalues()(i);
            cp.hessian_eigenvalues.push_back(ev);
            min_abs = std::min(min_abs, std::abs(ev));
            max_abs = std::max(max_abs, std::abs(ev));
        }
        std::sort(cp.hessian_eigenvalues.begin(), cp.hessian_eigenvalues.end(),
                  [](Complex x, Complex z) {
                      if (x.real() != z.real()) return x.real() < z.real();
                      return x.imag() < z.imag();
                  });
        cp.degenerate = (max_abs == 0) || (min_abs < opts.degeneracy_tol * max_abs);
        found.push_back(std::move(cp));
    }

    std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        for (std::size_t i = 0; i < a.location.size(); ++i) {
            if (a.location[i].real() != b.location[i].real())
                return a.location[i].real() < b.location[i].real();
            if (a.location[i].imag() != b.location[i].imag())
                return a.location[i].imag() < b.location[i].imag();
        }
        return false;
    });
    return found;
}

HessianYF hessian_yF(const PolyMap& field, std::span<const double> y, std::span<const double> at,
                     double degeneracy_tol) {
    const int d = field.dim_in();
    if (static_cast<int>(at.size()) != d) throw InputError("evaluation point has wrong dimension");
    const Polynomial yf = contract(field, y);

    HessianYF out;
    out.matrix = Eigen::MatrixXd(d, d);
    out.constant_in_a = true;
    for (int l = 0; l < d; ++l)
        for (int m = l; m < d; ++m) {
            const Polynomial second = yf.derivative(l).derivative(m);
            if (second.total_degree() > 0) out.constant_in_a = false;
            const double v = second(at);
            out.matrix(l, m) = v;
            out.matrix(m, l) = v;
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.matrix);
    out.eigenvalues = es.eigenvalues();
    out.eigenvectors = es.eigenvectors();
    double min_abs = std::numeric_limits<double>::infinity(), max_abs = 0;
    for (int i = 0; i < d; ++i) {
        min_abs = std::min(min_abs, std::abs(out.eigenvalues(i)));
        max_abs = std::max(max_abs, std::abs(out.eigenvalues(i)));
    }
    out.degenerate = (max_abs == 0) || (min_abs < degeneracy_tol * max_abs);
    return out;
}

namespace {

/// Substitute b -> b + shift in the b-block variables of every monomial while
/// leaving the linear a-block factor in place.
PolyMap shift_b_argument(const PolyMap& rows, const PartialLinearDecomposition& dec,
                         std::span<const double> alpha) {
    std::vector<double> shift(dec.dim, 0.0);
    for (int i : dec.b_block) shift[i] = alpha[i];
    std::vector<Polynomial> comps;
    comps.reserve(rows.components().size());
    for (const auto& comp : rows.components()) comps.push_back(comp.shifted(shift));
    return PolyMap(dec.dim, std::move(comps));
}

}  // namespace

PolyMap asymptotic_iteration(const PartialLinearDecomposition& dec,
                             std::span<const double> tau_weights, std::span<const double> alpha) {
    const int d = dec.dim;
    if (static_cast<int>(tau_weights.size()) != d)
        throw InputError("one tau weight per coordinate required");

    PolyMap cross = dec.A;
    if (!alpha.empty()) {
        if (static_cast<int>(alpha.size()) != d) throw InputError("alpha has wrong dimension");
        cross = shift_b_argument(dec.A, dec, alpha);
    }

    std::vector<Polynomial> comps;
    comps.reserve(d);
    for (int i = 0; i < d; ++i) comps.push_back(Polynomial::variable(d, i));
    for (std::size_t k = 0; k < dec.b_block.size(); ++k) {
        const int i = dec.b_block[k];
        comps[i] = comps[i] + cross.component(static_cast<int>(k)).scaled(tau_weights[i]);
    }
    return PolyMap(d, std::move(comps));
}

DominanceSample dominance(const PartialLinearDecomposition& dec, std::span<const double> alpha,
                          std::span<const Complex> y, std::span<const double> tau_weights,
                          std::span<const std::vector<double>> points, double zero_tol) {
    const int d = dec.dim;
    if (static_cast<int>(alpha.size()) != d) throw InputError("alpha has wrong dimension");
    if (static_cast<int>(y.size()) != d) throw InputError("y has wrong dimension");
    if (static_cast<int>(tau_weights.size()) != d)
        throw InputError("one tau weight per coordinate required");

    // Contract the a-block factor of each A-row with beta = alpha's a-part:
    // every A-monomial is linear in exactly one a-block variable.
    std::vector<char> in_a(d, 0);
    for (int i : dec.a_block) in_a[i] = 1;
    std::vector<Polynomial> contracted;
    for (const auto& row : dec.A.components()) {
        std::vector<Monomial> terms;
        for (const auto& t : row.terms()) {
            Monomial m = t;
            for (int i = 0; i < d; ++i)
                if (in_a[i] && m.powers[i] == 1) {
                    m.coef *= alpha[i];
                    m.powers[i] = 0;
                    break;
                }
            terms.push_back(std::move(m));
        }
        contracted.push_back(Polynomial::from_terms(d, std::move(terms)));
    }

    DominanceSample out;
    for (const auto& p : points) {
        Complex term = 0;
        for (std::size_t k = 0; k < dec.b_block.size(); ++k) {
            const int i = dec.b_block[k];
            term += y[i] * tau_weights[i] * contracted[k](std::span<const double>(p));
        }
        const double re = term.real();
        out.values.push_back(re);
        out.signs.push_back(std::abs(re) < zero_tol ? 0 : (re > 0 ? 1 : -1));
        if (std::abs(re) < zero_tol) out.near_zero.push_back(out.values.size() - 1);
    }
    return out;
}

ResolventGap resolvent_gap(const PlancherelRotach& pr, int cap) {
    std::vector<int> n(pr.n.size());
    for (std::size_t i = 0; i < pr.n.size(); ++i) n[i] = static_cast<int>(pr.n[i]);

    ResolventGap out;
    out.power_term = 1.0;
    if (pr.y.empty()) throw InputError("resolvent gap requires the y vector");
    for (std::size_t i = 0; i < pr.y.size(); ++i)
        for (long k = 0; k < pr.n[i]; ++k) out.power_term *= pr.y[i];

    out.derivative_term = series_exp_derivative(pr.exponent, n, cap).value;
    out.gap = out.power_term - out.derivative_term;
    out.normalized = (out.power_term != Complex(0.0)) ? out.gap / out.power_term : Complex(0.0);
    return out;
}

}  // namespace pfdyn
