#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "even4/intmat.hpp"

namespace even4 {

/// Smith decomposition U * M * V = D with U, V unimodular and D diagonal,
/// entries nonnegative and divisibility-chained (zeros trailing).
struct SmithResult {
    IntMatrix U;  // rows x rows
    IntMatrix D;  // rows x cols
    IntMatrix V;  // cols x cols

    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        const std::size_t n = std::min(D.rows(), D.cols());
        d.reserve(n);
        for (std::size_t i = 0; i < n; ++i) d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

// Pivot rule: nonzero entry of minimal absolute value in the trailing
// submatrix, ties broken by lowest (row, col).
inline std::optional<std::pair<std::size_t, std::size_t>>
select_pivot(const IntMatrix& a, std::size_t k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = k; i < a.rows(); ++i) {
        for (std::size_t j = k; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            Int v = abs(a(i, j));
            if (!best || v < best_abs) {
                best = {i, j};
                best_abs = v;
            }
        }
    }
    return best;
}

}  // namespace detail

inline SmithResult smith_normal_form(const IntMatrix& m) {
    if (m.empty()) throw std::invalid_argument("smith_normal_form: empty matrix");

    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const std::size_t n = std::min(rows, cols);

    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            auto pivot = detail::select_pivot(a, k);
            if (!pivot) goto done;  // trailing submatrix is zero
            a.swap_rows(k, pivot->first);
            u.swap_rows(k, pivot->first);
            a.swap_cols(k, pivot->second);
            v.swap_cols(k, pivot->second);

            // Reduce column k and row k modulo the pivot. Surviving
            // remainders are strictly smaller and force a re-selection.
            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (a(i, k) == 0) continue;
                Int q = a(i, k) / a(k, k);
                if (q != 0) {
                    a.add_row_multiple(i, k, -q);
                    u.add_row_multiple(i, k, -q);
                }
                if (a(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (a(k, j) == 0) continue;
                Int q = a(k, j) / a(k, k);
                if (q != 0) {
                    a.add_col_multiple(j, k, -q);
                    v.add_col_multiple(j, k, -q);
                }
                if (a(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot divides its row and column; enforce that it also divides
            // every remaining entry before moving on (divisibility chain).
            bool divides_all = true;
            for (std::size_t i = k + 1; i < rows && divides_all; ++i) {
                for (std::size_t j = k + 1; j < cols; ++j) {
                    if (a(i, j) % a(k, k) != 0) {
                        a.add_row_multiple(k, i, 1);
                        u.add_row_multiple(k, i, 1);
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) break;
        }
    }
done:

    // Normalize diagonal signs; the sign is absorbed into U.
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) < 0) {
            a.negate_row(i);
            u.negate_row(i);
        }
    }

    return SmithResult{std::move(u), std::move(a), std::move(v)};
}

}  // namespace even4
