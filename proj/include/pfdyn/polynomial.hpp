#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <vector>

#include "pfdyn/errors.hpp"

namespace pfdyn {

/// One term c * x1^e1 * ... * xd^ed of a multivariate polynomial.
template <typename Scalar>
struct MonomialT {
    Scalar coef{};
    std::vector<int> powers;  // length = ambient dimension

    int total_degree() const {
        return std::accumulate(powers.begin(), powers.end(), 0);
    }
};

namespace detail {

/// Graded lexicographic order on exponent vectors: lower total degree first,
/// ties broken lexicographically.
inline bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <typename Scalar>
bool is_finite_scalar(Scalar v) {
    if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    } else {
        return std::isfinite(v);
    }
}

}  // namespace detail

/// Multivariate polynomial in canonical form: terms sorted graded-lex,
/// exponent vectors unique, zero coefficients dropped. The canonical form is
/// unique, so equality is term-wise comparison and re-canonicalization is
/// idempotent. Evaluation accumulates terms in canonical order, which makes
/// results bit-for-bit reproducible.
template <typename Scalar>
class PolynomialT {
public:
    using Monomial = MonomialT<Scalar>;

    explicit PolynomialT(int dim = 0) : dim_(dim) {
        if (dim < 0) throw InputError("polynomial dimension must be >= 0");
    }

    static PolynomialT constant(int dim, Scalar c) {
        PolynomialT p(dim);
        if (c != Scalar{}) p.terms_.push_back({c, std::vector<int>(dim, 0)});
        return p;
    }

    /// The coordinate polynomial x_index.
    static PolynomialT variable(int dim, int index) {
        if (index < 0 || index >= dim) throw InputError("variable index out of range");
        PolynomialT p(dim);
        std::vector<int> pw(dim, 0);
        pw[index] = 1;
        p.terms_.push_back({Scalar(1), std::move(pw)});
        return p;
    }

    static PolynomialT from_terms(int dim, std::vector<Monomial> terms) {
        PolynomialT p(dim);
        for (auto& t : terms) {
            if (static_cast<int>(t.powers.size()) != dim)
                throw InputError("monomial power vector length does not match dimension");
            for (int e : t.powers)
                if (e < 0) throw InputError("monomial exponents must be non-negative");
            if (!detail::is_finite_scalar(t.coef))
                throw InputError("monomial coefficient must be finite");
        }
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    int dim() const { return dim_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; -1 for the zero polynomial.
    int total_degree() const {
        return terms_.empty() ? -1 : terms_.back().total_degree();
    }

    Scalar coefficient(std::span<const int> powers) const {
        for (const auto& t : terms_)
            if (std::equal(t.powers.begin(), t.powers.end(), powers.begin(), powers.end()))
                return t.coef;
        return Scalar{};
    }

    Scalar operator()(std::span<const Scalar> point) const {
        if (static_cast<int>(point.size()) != dim_)
            throw InputError("evaluation point has wrong dimension");
        Scalar sum{};
        for (const auto& t : terms_) {
            Scalar term = t.coef;
            for (int i = 0; i < dim_; ++i)
                for (int k = 0; k < t.powers[i]; ++k) term *= point[i];
            sum += term;
        }
        return sum;
    }

    Scalar operator()(const std::vector<Scalar>& point) const {
        return (*this)(std::span<const Scalar>(point));
    }

    PolynomialT derivative(int var) const {
        if (var < 0 || var >= dim_) throw InputError("derivative variable out of range");
        std::vector<Monomial> out;
        for (const auto& t : terms_) {
            if (t.powers[var] == 0) continue;
            Monomial d = t;
            d.coef *= static_cast<double>(t.powers[var]);
            d.powers[var] -= 1;
            out.push_back(std::move(d));
        }
        return from_terms(dim_, std::move(out));
    }

    PolynomialT operator+(const PolynomialT& rhs) const {
        require_same_dim(rhs);
        std::vector<Monomial> out = terms_;
        out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
        return from_terms(dim_, std::move(out));
    }

    PolynomialT operator-(const PolynomialT& rhs) const { return *this + rhs.scaled(Scalar(-1)); }

    PolynomialT operator*(const PolynomialT& rhs) const {
        require_same_dim(rhs);
        std::vector<Monomial> out;
        out.reserve(terms_.size() * rhs.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : rhs.terms_) {
                Monomial m;
                m.coef = a.coef * b.coef;
                m.powers.resize(dim_);
                for (int i = 0; i < dim_; ++i) m.powers[i] = a.powers[i] + b.powers[i];
                out.push_back(std::move(m));
            }
        return from_terms(dim_, std::move(out));
    }

    PolynomialT scaled(Scalar c) const {
        std::vector<Monomial> out = terms_;
        for (auto& t : out) t.coef *= c;
        return from_terms(dim_, std::move(out));
    }

    /// Substitution x -> x + alpha, expanded and canonicalized.
    PolynomialT shifted(std::span<const Scalar> alpha) const {
        if (static_cast<int>(alpha.size()) != dim_)
            throw InputError("shift vector has wrong dimension");
        PolynomialT result(dim_);
        for (const auto& t : terms_) {
            PolynomialT term = constant(dim_, t.coef);
            for (int i = 0; i < dim_; ++i) {
                if (t.powers[i] == 0) continue;
                PolynomialT base = variable(dim_, i) + constant(dim_, alpha[i]);
                for (int k = 0; k < t.powers[i]; ++k) term = term * base;
            }
            result = result + term;
        }
        return result;
    }

    bool operator==(const PolynomialT& rhs) const {
        if (dim_ != rhs.dim_ || terms_.size() != rhs.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].coef != rhs.terms_[i].coef || terms_[i].powers != rhs.terms_[i].powers)
                return false;
        return true;
    }

private:
    void require_same_dim(const PolynomialT& rhs) const {
        if (dim_ != rhs.dim_) throw InputError("polynomial dimension mismatch");
    }

    void canonicalize() {
        std::sort(terms_.begin(), terms_.end(), [](const Monomial& a, const Monomial& b) {
            return detail::graded_lex_less(a.powers, b.powers);
        });
        std::vector<Monomial> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().powers == t.powers)
                merged.back().coef += t.coef;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const Monomial& t) { return t.coef == Scalar{}; });
        terms_ = std::move(merged);
    }

    int dim_;
    std::vector<Monomial> terms_;
};

using Monomial = MonomialT<double>;
using Polynomial = PolynomialT<double>;
using CMonomial = MonomialT<std::complex<double>>;
using CPolynomial = PolynomialT<std::complex<double>>;

inline CPolynomial to_complex(const Polynomial& p) {
    std::vector<CMonomial> terms;
    terms.reserve(p.terms().size());
    for (const auto& t : p.terms()) terms.push_back({std::complex<double>(t.coef, 0.0), t.powers});
    return CPolynomial::from_terms(p.dim(), std::move(terms));
}

/// Evaluate a real polynomial at a complex point.
inline std::complex<double> eval_complex(const Polynomial& p,
                                         std::span<const std::complex<double>> point) {
    if (static_cast<int>(point.size()) != p.dim())
        throw InputError("evaluation point has wrong dimension");
    std::complex<double> sum{};
    for (const auto& t : p.terms()) {
        std::complex<double> term = t.coef;
        for (int i = 0; i < p.dim(); ++i)
            for (int k = 0; k < t.powers[i]; ++k) term *= point[i];
        sum += term;
    }
    return sum;
}

}  // namespace pfdyn
