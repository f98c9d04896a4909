#include "pfdyn/polymap.hpp"

#include <algorithm>

namespace pfdyn {

CPolynomial contract(const PolyMap& map, std::span<const std::complex<double>> y) {
    if (static_cast<int>(y.size()) != map.dim_out()) throw InputError("contraction weight length mismatch");
    std::vector<CMonomial> terms;
    for (int i = 0; i < map.dim_out(); ++i)
        for (const auto& t : map.component(i).terms())
            terms.push_back({y[i] * t.coef, t.powers});
    return CPolynomial::from_terms(map.dim_in(), std::move(terms));
}

Polynomial contract(const PolyMap& map, std::span<const double> y) {
    if (static_cast<int>(y.size()) != map.dim_out()) throw InputError("contraction weight length mismatch");
    std::vector<Monomial> terms;
    for (int i = 0; i < map.dim_out(); ++i)
        for (const auto& t : map.component(i).terms())
            terms.push_back({y[i] * t.coef, t.powers});
    return Polynomial::from_terms(map.dim_in(), std::move(terms));
}

PolyMap PartialLinearDecomposition::recompose() const {
    std::vector<Polynomial> comps(dim, Polynomial(dim));
    for (std::size_t k = 0; k < a_block.size(); ++k) {
        const int i = a_block[k];
        Polynomial diag = Polynomial::variable(dim, i).scaled(lambda[k]);
        comps[i] = diag + C.component(static_cast<int>(k)) + D.component(static_cast<int>(k));
    }
    for (std::size_t k = 0; k < b_block.size(); ++k) {
        const int i = b_block[k];
        Polynomial diag = Polynomial::variable(dim, i).scaled(lambda_prime[k]);
        comps[i] = diag + A.component(static_cast<int>(k)) + B.component(static_cast<int>(k));
    }
    return PolyMap(dim, std::move(comps));
}

namespace {

int degree_in(const std::vector<int>& powers, const std::vector<char>& mask) {
    int deg = 0;
    for (std::size_t i = 0; i < powers.size(); ++i)
        if (mask[i]) deg += powers[i];
    return deg;
}

}  // namespace

std::optional<PartialLinearDecomposition> decompose_partial_linear(const PolyMap& field,
                                                                   std::span<const int> a_block) {
    if (!field.is_square()) throw InputError("decomposition requires a square field");
    const int d = field.dim_in();

    std::vector<char> in_a(d, 0);
    for (int i : a_block) {
        if (i < 0 || i >= d) throw InputError("a-block index out of range");
        if (in_a[i]) throw InputError("a-block index repeated");
        in_a[i] = 1;
    }
    std::vector<int> a_sorted(a_block.begin(), a_block.end());
    std::sort(a_sorted.begin(), a_sorted.end());
    std::vector<int> b_sorted;
    for (int i = 0; i < d; ++i)
        if (!in_a[i]) b_sorted.push_back(i);
    if (a_sorted.empty() || b_sorted.empty()) return std::nullopt;

    PartialLinearDecomposition dec;
    dec.dim = d;
    dec.a_block = a_sorted;
    dec.b_block = b_sorted;
    dec.lambda.assign(a_sorted.size(), 0.0);
    dec.lambda_prime.assign(b_sorted.size(), 0.0);

    std::vector<std::vector<Monomial>> a_terms(a_sorted.size()), b_terms_A(b_sorted.size()),
        b_terms_B(b_sorted.size()), a_terms_C(a_sorted.size()), a_terms_D(a_sorted.size());

    // Classify each monomial of each row by its degree in the two blocks.
    for (std::size_t k = 0; k < a_sorted.size(); ++k) {
        const int row = a_sorted[k];
        for (const auto& t : field.component(row).terms()) {
            const int da = degree_in(t.powers, in_a);
            const int db = t.total_degree() - da;
            if (da == 0 && db == 0) return std::nullopt;  // constant: origin must be fixed
            if (da >= 2) return std::nullopt;             // rows linear in the a-block
            if (da == 1 && db == 0) {
                if (t.powers[row] != 1) return std::nullopt;  // off-diagonal linear in own block
                dec.lambda[k] = t.coef;
            } else if (da == 1) {
                a_terms_C[k].push_back(t);
            } else {
                a_terms_D[k].push_back(t);  // pure-b remainder, degree >= 1 allowed
            }
        }
    }

    for (std::size_t k = 0; k < b_sorted.size(); ++k) {
        const int row = b_sorted[k];
        for (const auto& t : field.component(row).terms()) {
            const int da = degree_in(t.powers, in_a);
            const int db = t.total_degree() - da;
            if (da == 0 && db == 0) return std::nullopt;
            if (da >= 2) return std::nullopt;  // cross terms are linear in a
            if (da == 0 && db == 1) {
                if (t.powers[row] != 1) return std::nullopt;  // off-diagonal linear in own block
                dec.lambda_prime[k] = t.coef;
            } else if (da == 1) {
                b_terms_A[k].push_back(t);
            } else {
                b_terms_B[k].push_back(t);  // pure-b, degree >= 2 by construction
            }
        }
    }

    auto build = [d](std::vector<std::vector<Monomial>>& rows) {
        std::vector<Polynomial> comps;
        comps.reserve(rows.size());
        for (auto& r : rows) comps.push_back(Polynomial::from_terms(d, std::move(r)));
        return PolyMap(d, std::move(comps));
    };
    dec.A = build(b_terms_A);
    dec.B = build(b_terms_B);
    dec.C = build(a_terms_C);
    dec.D = build(a_terms_D);

    // A nonzero A must carry genuine b-dependence somewhere; a constant-matrix
    // A would make the cross structure purely linear.
    bool a_zero = true;
    int max_db = 0;
    for (const auto& comp : dec.A.components())
        for (const auto& t : comp.terms()) {
            a_zero = false;
            max_db = std::max(max_db, t.total_degree() - 1);
        }
    if (!a_zero && max_db < 1) return std::nullopt;

    return dec;
}

std::vector<PartialLinearDecomposition> decompose_partial_linear_search(const PolyMap& field) {
    if (!field.is_square()) throw InputError("decomposition requires a square field");
    const int d = field.dim_in();
    if (d > 12) throw InputError("split search supported only for dimension <= 12");
    std::vector<PartialLinearDecomposition> found;
    for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
        std::vector<int> a_block;
        for (int i = 0; i < d; ++i)
            if (mask & (1u << i)) a_block.push_back(i);
        if (auto dec = decompose_partial_linear(field, a_block)) found.push_back(std::move(*dec));
    }
    return found;
}

}  // namespace pfdyn
