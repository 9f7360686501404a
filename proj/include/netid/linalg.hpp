#ifndef NETID_LINALG_HPP
#define NETID_LINALG_HPP

// Gaussian elimination over an exact field. Instantiated for Rational (Q)
// and TransferFunction (Q(z)); both keep every value in lowest terms, so no
// separate content reduction is needed between pivot steps.

#include "netid/matrix.hpp"
#include "netid/ratfunc.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace netid {

inline bool is_zero_value(const Rational& q) { return q == 0; }
inline bool is_zero_value(const TransferFunction& t) { return t.is_zero(); }

/// Pivot cost: lower is preferred. Degree growth is the bottleneck in Q(z).
inline long pivot_cost(const Rational& q)
{
    return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2));
}
inline long pivot_cost(const TransferFunction& t) { return t.total_degree(); }

struct RowRank {
    std::size_t rank = 0;
    /// Indices of rows forming a maximal independent set; earlier rows win ties.
    std::vector<std::size_t> independent_rows;
};

/// Rank by incremental elimination of each row against the rows accepted so far.
template <typename T>
RowRank row_rank(const Matrix<T>& m)
{
    RowRank out;
    struct BasisRow {
        std::vector<T> values;
        std::size_t pivot;
    };
    std::vector<BasisRow> basis;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<T> v(m.row(r).begin(), m.row(r).end());
        for (const auto& b : basis) {
            if (is_zero_value(v[b.pivot]))
                continue;
            const T f = v[b.pivot] / b.values[b.pivot];
            for (std::size_t c = 0; c < v.size(); ++c)
                if (!is_zero_value(b.values[c]))
                    v[c] -= f * b.values[c];
        }
        std::optional<std::size_t> pivot;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (!is_zero_value(v[c]) && (!pivot || pivot_cost(v[c]) < pivot_cost(v[*pivot])))
                pivot = c;
        if (!pivot)
            continue;
        basis.push_back({std::move(v), *pivot});
        out.independent_rows.push_back(r);
    }
    out.rank = basis.size();
    return out;
}

/// Solves a * x = b by Gauss-Jordan elimination; nullopt when a is singular.
template <typename T>
std::optional<Matrix<T>> solve(Matrix<T> a, Matrix<T> b)
{
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<std::size_t> pivot;
        for (std::size_t r = col; r < n; ++r)
            if (!is_zero_value(a(r, col)) && (!pivot || pivot_cost(a(r, col)) < pivot_cost(a(*pivot, col))))
                pivot = r;
        if (!pivot)
            return std::nullopt;
        if (*pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(*pivot, c), a(col, c));
            for (std::size_t c = 0; c < b.cols(); ++c)
                std::swap(b(*pivot, c), b(col, c));
        }
        const T inv = T(1) / a(col, col);
        for (std::size_t c = 0; c < n; ++c)
            if (!is_zero_value(a(col, c)))
                a(col, c) *= inv;
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (!is_zero_value(b(col, c)))
                b(col, c) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero_value(a(r, col)))
                continue;
            const T f = a(r, col);
            for (std::size_t c = 0; c < n; ++c)
                if (!is_zero_value(a(col, c)))
                    a(r, c) -= f * a(col, c);
            for (std::size_t c = 0; c < b.cols(); ++c)
                if (!is_zero_value(b(col, c)))
                    b(r, c) -= f * b(col, c);
        }
    }
    return b;
}

} // namespace netid

#endif
