#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "pfdyn/polynomial.hpp"

namespace pfdyn {

/// All exponent vectors of dimension d with total degree <= cap, enumerated in
/// graded-lex order with O(1) lookup. Backs the dense truncated-series store.
class MultiIndexSet {
public:
    MultiIndexSet(int dim, int cap);

    int dim() const { return dim_; }
    int cap() const { return cap_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<int>& at(std::size_t i) const { return indices_[i]; }

    /// Position of an exponent vector, or -1 when outside the truncation.
    long index_of(std::span<const int> powers) const;

private:
    static std::uint64_t pack(std::span<const int> powers);

    int dim_, cap_;
    std::vector<std::vector<int>> indices_;
    std::unordered_map<std::uint64_t, long> lookup_;
};

/// Coefficients of exp(p) through total degree set.cap(), indexed by `set`.
/// Uses the derivative recurrence d(exp p) = (dp) exp p, which costs
/// O(#terms(p) * #indices) and needs no large intermediate products.
std::vector<std::complex<double>> exp_series(const CPolynomial& p, const MultiIndexSet& set);

struct SeriesDerivative {
    std::vector<int> multi_index;
    std::complex<double> value;  // d^n exp(p) / da^n at 0
};

/// Brute-force extraction of d^n exp(exponent)/da^n |_{a=0} through the
/// truncated series: n! times the coefficient of a^n. Throws ResourceError
/// when |n| exceeds the cap.
SeriesDerivative series_exp_derivative(const CPolynomial& exponent, std::span<const int> n,
                                       int cap = 36);

}  // namespace pfdyn
