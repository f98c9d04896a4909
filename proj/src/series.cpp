#include "pfdyn/series.hpp"

#include <numeric>

namespace pfdyn {

namespace {

void enumerate(int dim, int cap, std::vector<int>& current, int pos, int remaining,
               std::vector<std::vector<int>>& out) {
    if (pos == dim) {
        out.push_back(current);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        current[pos] = e;
        enumerate(dim, cap, current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

}  // namespace

MultiIndexSet::MultiIndexSet(int dim, int cap) : dim_(dim), cap_(cap) {
    if (dim < 1 || dim > 8) throw InputError("series engine supports dimensions 1..8");
    if (cap < 0) throw InputError("series cap must be >= 0");
    std::vector<int> current(dim, 0);
    enumerate(dim, cap, current, 0, cap, indices_);
    std::sort(indices_.begin(), indices_.end(), detail::graded_lex_less);
    lookup_.reserve(indices_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) lookup_[pack(indices_[i])] = static_cast<long>(i);
}

std::uint64_t MultiIndexSet::pack(std::span<const int> powers) {
    // exponents fit in 8 bits each for dim <= 8 and cap <= 255
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < powers.size(); ++i)
        key |= static_cast<std::uint64_t>(powers[i] & 0xFF) << (8 * i);
    return key;
}

long MultiIndexSet::index_of(std::span<const int> powers) const {
    int total = 0;
    for (int e : powers) total += e;
    if (total > cap_) return -1;
    auto it = lookup_.find(pack(powers));
    return it == lookup_.end() ? -1 : it->second;
}

std::vector<std::complex<double>> exp_series(const CPolynomial& p, const MultiIndexSet& set) {
    if (p.dim() != set.dim()) throw InputError("polynomial dimension does not match index set");
    std::vector<std::complex<double>> coeffs(set.size(), 0.0);

    std::vector<int> zero(set.dim(), 0);
    const std::complex<double> p0 = p.coefficient(zero);
    coeffs[0] = std::exp(p0);

    // E_m = (1/m_i) sum_{k<=m, k_i>=1} k_i p_k E_{m-k}, any i with m_i > 0.
    std::vector<int> diff(set.dim());
    for (std::size_t idx = 1; idx < set.size(); ++idx) {
        const auto& m = set.at(idx);
        int pivot = 0;
        while (m[pivot] == 0) ++pivot;
        std::complex<double> acc = 0.0;
        for (const auto& term : p.terms()) {
            const auto& k = term.powers;
            if (k[pivot] == 0) continue;
            bool fits = true;
            for (int i = 0; i < set.dim(); ++i) {
                diff[i] = m[i] - k[i];
                if (diff[i] < 0) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            const long j = set.index_of(diff);
            acc += static_cast<double>(k[pivot]) * term.coef * coeffs[static_cast<std::size_t>(j)];
        }
        coeffs[idx] = acc / static_cast<double>(m[pivot]);
    }
    return coeffs;
}

SeriesDerivative series_exp_derivative(const CPolynomial& exponent, std::span<const int> n,
                                       int cap) {
    if (static_cast<int>(n.size()) != exponent.dim())
        throw InputError("derivative order length does not match dimension");
    int total = 0;
    for (int e : n) {
        if (e < 0) throw InputError("derivative orders must be non-negative");
        total += e;
    }
    if (total > cap) throw ResourceError("requested derivative order exceeds the series cap");

    MultiIndexSet set(exponent.dim(), total);
    auto coeffs = exp_series(exponent, set);
    const long idx = set.index_of(n);

    SeriesDerivative out;
    out.multi_index.assign(n.begin(), n.end());
    double factorial = 1.0;
    for (int e : n)
        for (int k = 2; k <= e; ++k) factorial *= k;
    out.value = coeffs[static_cast<std::size_t>(idx)] * factorial;
    return out;
}

}  // namespace pfdyn
