#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "pfdyn/polynomial.hpp"

namespace pfdyn {

/// Matrix of polynomials, row-major (used for Jacobians of polynomial maps).
struct PolyJacobian {
    int rows = 0;
    int cols = 0;
    std::vector<Polynomial> entries;

    const Polynomial& at(int r, int c) const { return entries[static_cast<std::size_t>(r) * cols + c]; }

    Eigen::MatrixXd evaluate(std::span<const double> point) const {
        Eigen::MatrixXd m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = at(r, c)(point);
        return m;
    }
};

/// Polynomial map R^dim_in -> R^dim_out held component-wise in canonical form.
class PolyMap {
public:
    PolyMap() = default;

    PolyMap(int dim_in, std::vector<Polynomial> components) : dim_in_(dim_in), components_(std::move(components)) {
        for (const auto& c : components_)
            if (c.dim() != dim_in_) throw InputError("component dimension does not match dim_in");
    }

    static PolyMap zero(int dim_in, int dim_out) {
        return PolyMap(dim_in, std::vector<Polynomial>(dim_out, Polynomial(dim_in)));
    }

    static PolyMap identity(int dim) {
        std::vector<Polynomial> comps;
        comps.reserve(dim);
        for (int i = 0; i < dim; ++i) comps.push_back(Polynomial::variable(dim, i));
        return PolyMap(dim, std::move(comps));
    }

    int dim_in() const { return dim_in_; }
    int dim_out() const { return static_cast<int>(components_.size()); }
    bool is_square() const { return dim_in_ == dim_out(); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& component(int i) const { return components_.at(i); }

    std::vector<double> evaluate(std::span<const double> point) const {
        if (static_cast<int>(point.size()) != dim_in_)
            throw InputError("point dimension does not match map dim_in");
        std::vector<double> out(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](point);
        return out;
    }

    std::vector<double> evaluate(const std::vector<double>& point) const {
        return evaluate(std::span<const double>(point));
    }

    /// Entry (i,j) is dF_i/dx_j as a canonical polynomial.
    PolyJacobian jacobian() const {
        PolyJacobian j;
        j.rows = dim_out();
        j.cols = dim_in_;
        j.entries.reserve(static_cast<std::size_t>(j.rows) * j.cols);
        for (const auto& comp : components_)
            for (int v = 0; v < dim_in_; ++v) j.entries.push_back(comp.derivative(v));
        return j;
    }

    /// The translated map a -> F(a + alpha) - alpha (square maps only).
    PolyMap translated(std::span<const double> alpha) const {
        if (!is_square()) throw InputError("translate requires a square map");
        if (static_cast<int>(alpha.size()) != dim_in_)
            throw InputError("translation vector has wrong dimension");
        std::vector<Polynomial> comps;
        comps.reserve(components_.size());
        for (int i = 0; i < dim_out(); ++i)
            comps.push_back(components_[i].shifted(alpha) - Polynomial::constant(dim_in_, alpha[i]));
        return PolyMap(dim_in_, std::move(comps));
    }

    PolyMap operator+(const PolyMap& rhs) const {
        require_same_shape(rhs);
        std::vector<Polynomial> comps;
        comps.reserve(components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i) comps.push_back(components_[i] + rhs.components_[i]);
        return PolyMap(dim_in_, std::move(comps));
    }

    PolyMap operator-(const PolyMap& rhs) const { return *this + rhs.scaled(-1.0); }

    PolyMap scaled(double c) const {
        std::vector<Polynomial> comps;
        comps.reserve(components_.size());
        for (const auto& comp : components_) comps.push_back(comp.scaled(c));
        return PolyMap(dim_in_, std::move(comps));
    }

    bool operator==(const PolyMap& rhs) const {
        return dim_in_ == rhs.dim_in_ && components_ == rhs.components_;
    }

private:
    void require_same_shape(const PolyMap& rhs) const {
        if (dim_in_ != rhs.dim_in_ || dim_out() != rhs.dim_out()) throw InputError("map shape mismatch");
    }

    int dim_in_ = 0;
    std::vector<Polynomial> components_;
};

/// Contraction y . F of the components of a map with a weight vector.
CPolynomial contract(const PolyMap& map, std::span<const std::complex<double>> y);
Polynomial contract(const PolyMap& map, std::span<const double> y);

/// Split of a square field F into
///     F_a = lambda a + C(b)a + D(b)        (a-block rows: linear in a)
///     F_b = lambda' b + A(b)a + B(b)       (b-block rows)
/// where a collects the coordinates in `a_block` and b the complement.
/// A and C are stored as the expanded products A(b)a, C(b)a (each monomial of
/// degree exactly 1 in the a-block); B and D collect the pure-b remainders.
/// Recomposition is coefficient-exact. The a-block is the one that turns into
/// the identity component of the asymptotic iteration G.
struct PartialLinearDecomposition {
    std::vector<int> a_block;  // distinguished linear coordinates
    std::vector<int> b_block;  // complement, in increasing order
    std::vector<double> lambda;        // diagonal linear coefficients, a-block rows
    std::vector<double> lambda_prime;  // diagonal linear coefficients, b-block rows
    PolyMap A;  // rows follow b_block order; dim_in = d
    PolyMap B;  // rows follow b_block order; pure b-monomials of degree >= 2
    PolyMap C;  // rows follow a_block order; degree 1 in a, degree >= 1 in b
    PolyMap D;  // rows follow a_block order; pure b-monomials of degree >= 1
    int dim = 0;

    PolyMap recompose() const;
};

/// Match the field against the partial-linearity template for the given split.
/// Absence of the structure is a valid result (nullopt). Coefficient tests are
/// exact: no tolerance is applied.
std::optional<PartialLinearDecomposition> decompose_partial_linear(const PolyMap& field,
                                                                   std::span<const int> a_block);

/// Try every nontrivial split (2^d - 2 of them, d <= 12) and return all valid
/// decompositions, ordered by the a-block index set.
std::vector<PartialLinearDecomposition> decompose_partial_linear_search(const PolyMap& field);

}  // namespace pfdyn
