#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "even4/intmat.hpp"

namespace even4 {

struct DegenerateFormError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Symmetric integral bilinear form, held as its Gram matrix.
struct BilinearForm {
    IntMatrix gram;

    BilinearForm() = default;
    explicit BilinearForm(IntMatrix g) : gram(std::move(g)) {
        if (!gram.is_symmetric())
            throw std::invalid_argument("BilinearForm: Gram matrix must be symmetric");
    }

    std::size_t rank() const { return gram.rows(); }
};

/// The rank-8 negative definite even unimodular form: the negated E8 Cartan
/// matrix in Bourbaki node order (node 2 attached to node 4).
inline BilinearForm e8() {
    IntMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
    auto link = [&g](std::size_t a, std::size_t b) {
        g(a - 1, b - 1) = 1;
        g(b - 1, a - 1) = 1;
    };
    link(1, 3);
    link(2, 4);
    link(3, 4);
    link(4, 5);
    link(5, 6);
    link(6, 7);
    link(7, 8);
    return BilinearForm(std::move(g));
}

/// The hyperbolic form of rank 2.
inline BilinearForm hyperbolic() {
    return BilinearForm(IntMatrix{{0, 1}, {1, 0}});
}

inline BilinearForm direct_sum(const BilinearForm& a, const BilinearForm& b) {
    return BilinearForm(block_diagonal(a.gram, b.gram));
}

/// A form is even iff Q(x, x) is always even, i.e. the diagonal is even.
inline bool is_even(const BilinearForm& f) {
    for (std::size_t i = 0; i < f.gram.rows(); ++i)
        if (!even4::is_even(f.gram(i, i))) return false;
    return true;
}

struct Inertia {
    std::size_t positives = 0;
    std::size_t negatives = 0;
    Int signature() const { return Int(positives) - Int(negatives); }
};

/// Exact inertia by rational symmetric reduction. A nonzero diagonal pivot is
/// eliminated directly; a zero diagonal pivot with a nonzero off-diagonal
/// entry splits off a rank-2 block contributing one positive and one negative
/// index. A zero row means the form is degenerate.
inline Inertia inertia(const BilinearForm& f) {
    const std::size_t n = f.gram.rows();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(f.gram(i, j));

    Inertia out;
    while (!a.empty()) {
        const std::size_t m = a.size();
        if (a[0][0] != 0) {
            const Rat pivot = a[0][0];
            if (pivot > 0)
                ++out.positives;
            else
                ++out.negatives;
            std::vector<std::vector<Rat>> b(m - 1, std::vector<Rat>(m - 1));
            for (std::size_t i = 1; i < m; ++i)
                for (std::size_t j = 1; j < m; ++j)
                    b[i - 1][j - 1] = a[i][j] - a[0][i] * a[0][j] / pivot;
            a = std::move(b);
            continue;
        }
        std::size_t j = 1;
        while (j < m && a[0][j] == 0) ++j;
        if (j == m) throw DegenerateFormError("inertia: form is degenerate (zero determinant)");
        // Split off the block spanned by indices {0, j}: determinant -b^2 < 0.
        ++out.positives;
        ++out.negatives;
        const Rat b_ = a[0][j];
        const Rat c_ = a[j][j];
        std::vector<std::size_t> rest;
        for (std::size_t i = 1; i < m; ++i)
            if (i != j) rest.push_back(i);
        std::vector<std::vector<Rat>> b(rest.size(), std::vector<Rat>(rest.size()));
        for (std::size_t x = 0; x < rest.size(); ++x) {
            for (std::size_t y = 0; y < rest.size(); ++y) {
                const std::size_t i0 = rest[x], j0 = rest[y];
                b[x][y] = a[i0][j0] + (c_ * a[0][i0] * a[0][j0] -
                                       b_ * (a[0][i0] * a[j][j0] + a[j][i0] * a[0][j0])) /
                                          (b_ * b_);
            }
        }
        a = std::move(b);
    }
    return out;
}

inline Int signature(const BilinearForm& f) { return inertia(f).signature(); }

inline bool is_unimodular(const BilinearForm& f) {
    Int d = det(f.gram);
    return d == 1 || d == -1;
}

/// The classification coordinates of a nontrivial even indefinite unimodular
/// form p*E8 + q*H: p copies of the negative definite E8 block (its negation
/// when p < 0) and q >= 1 hyperbolic planes.
struct EvenIndefiniteType {
    Int p;
    Int q;

    Int rank() const { return 8 * abs(p) + 2 * q; }
    Int signature() const { return -8 * p; }

    bool operator==(const EvenIndefiniteType& o) const { return p == o.p && q == o.q; }
};

enum class ClassifyReject {
    none,
    signature_not_multiple_of_8,
    parity_mismatch,
    definite,
};

struct ClassifyResult {
    std::optional<EvenIndefiniteType> type;
    ClassifyReject reject = ClassifyReject::none;
    std::string message;

    bool ok() const { return type.has_value(); }
};

/// Solve rank = 8|p| + 2q, tau = -8p for integers p and q >= 1. Failure modes
/// name exactly why no nontrivial even unimodular form has these invariants.
inline ClassifyResult classify_even_indefinite(const Int& rank, const Int& tau) {
    ClassifyResult r;
    if (tau % 8 != 0) {
        r.reject = ClassifyReject::signature_not_multiple_of_8;
        r.message = "signature of an even unimodular form is divisible by 8";
        return r;
    }
    if ((rank - abs(tau)) % 2 != 0) {
        r.reject = ClassifyReject::parity_mismatch;
        r.message = "rank and |signature| must have equal parity";
        return r;
    }
    const Int p = -tau / 8;
    const Int q = (rank - abs(tau)) / 2;
    if (q < 1) {
        r.reject = ClassifyReject::definite;
        r.message = "definite: a nontrivial even intersection form is indefinite (q >= 1)";
        return r;
    }
    r.type = EvenIndefiniteType{p, q};
    return r;
}

/// Assemble the Gram matrix of p*E8 + q*H.
inline BilinearForm build_form(const EvenIndefiniteType& t) {
    if (t.q < 1) throw std::invalid_argument("build_form: q must be >= 1");
    BilinearForm result;
    const BilinearForm block = t.p >= 0 ? e8() : BilinearForm(e8().gram.negated());
    for (Int i = 0; i < abs(t.p); ++i) result = direct_sum(result, block);
    const BilinearForm h = hyperbolic();
    for (Int i = 0; i < t.q; ++i) result = direct_sum(result, h);
    return result;
}

}  // namespace even4
