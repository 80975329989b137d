#pragma once

#include "tvc/matrix.hpp"

#include <map>
#include <vector>

namespace tvc {

/// Result of bringing M into the extremal form: Q invertible, reduced = QM,
/// t = number of distinct standard unit vectors among the columns of reduced,
/// pivot_assignment maps each chosen column label to its pivot row label.
struct EchelonResult {
    IndexedMatrix Q;
    IndexedMatrix reduced;
    int t = 0;
    std::map<int, int> pivot_assignment;
};

/// Number of distinct standard unit vectors occurring as columns.
inline int count_unit_columns(const IndexedMatrix& m) {
    std::vector<int> pivot_rows;
    for (int c : m.cols()) {
        int one_row = 0, ones = 0;
        bool clean = true;
        for (int r : m.rows()) {
            const RingElem& e = m.at(r, c);
            if (e.is_one()) { ++ones; one_row = r; }
            else if (!e.is_zero()) { clean = false; break; }
        }
        if (clean && ones == 1) pivot_rows.push_back(one_row);
    }
    std::sort(pivot_rows.begin(), pivot_rows.end());
    pivot_rows.erase(std::unique(pivot_rows.begin(), pivot_rows.end()), pivot_rows.end());
    return static_cast<int>(pivot_rows.size());
}

namespace detail {

// All size-k subsets of `from`, lexicographically ordered by element list.
inline void subsets_of_size_rec(const std::vector<int>& pool, std::size_t start, int k,
                                std::vector<int>& cur, std::vector<IndexSet>& out) {
    if (k == 0) { out.emplace_back(cur); return; }
    for (std::size_t i = start; i + static_cast<std::size_t>(k) <= pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets_of_size_rec(pool, i + 1, k - 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<IndexSet> subsets_of_size(const IndexSet& from, int k) {
    std::vector<IndexSet> out;
    if (k < 0 || k > from.size()) return out;
    std::vector<int> cur;
    subsets_of_size_rec(from.elements(), 0, k, cur, out);
    return out;
}

// gcd of all t x t minors of the integer lift of M[A,C], |C| = t.
inline Int minor_gcd(const IndexedMatrix& m, const IndexSet& colsubset) {
    const int t = colsubset.size();
    Int g = 0;
    for (const IndexSet& rowsubset : subsets_of_size(m.rows(), t)) {
        std::vector<std::vector<Int>> a(t, std::vector<Int>(t));
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j)
                a[i][j] = m.at(rowsubset.at(i), colsubset.at(j)).int_value();
        g = gcd(g, int_determinant(std::move(a)));
        if (g == 1) break;
    }
    return g;
}

// Can the columns C be turned into distinct standard unit vectors by some
// invertible transformation? Over Z: gcd of the maximal minors is 1. Over
// Z/n: lift to Z and include n in the gcd.
inline bool column_subset_realizable(const IndexedMatrix& m, const IndexSet& colsubset) {
    Int g = minor_gcd(m, colsubset);
    switch (m.ring().kind()) {
        case RingKind::Integers: return g == 1;
        case RingKind::IntegersMod:
        case RingKind::PrimeField: return gcd(g, m.ring().modulus()) == 1;
        default: throw std::logic_error("column_subset_realizable: ring not handled here");
    }
}

struct FieldReduction {
    IndexedMatrix Q;
    IndexedMatrix reduced;
    int rank = 0;
    std::map<int, int> pivot_assignment;  // column label -> pivot row label
};

// Full RREF over a field, recording the row transformation in Q. Pivot rows
// are assigned top-down, so pivot row positions are 0..rank-1.
inline FieldReduction field_row_reduce(const IndexedMatrix& m) {
    if (!m.ring().is_field()) throw std::invalid_argument("field_row_reduce: ring is not a field");
    const int p = m.row_count(), q = m.col_count();
    std::vector<std::vector<RingElem>> a(p, std::vector<RingElem>(q, RingElem::zero(m.ring())));
    std::vector<std::vector<RingElem>> qm(p, std::vector<RingElem>(p, RingElem::zero(m.ring())));
    for (int i = 0; i < p; ++i) {
        qm[i][i] = RingElem::one(m.ring());
        for (int j = 0; j < q; ++j) a[i][j] = m.at(m.rows().at(i), m.cols().at(j));
    }
    int rank = 0;
    std::map<int, int> pivots;
    for (int j = 0; j < q && rank < p; ++j) {
        int piv = -1;
        for (int i = rank; i < p; ++i)
            if (!a[i][j].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        std::swap(qm[rank], qm[piv]);
        RingElem inv = *a[rank][j].try_inverse();
        for (int k = 0; k < q; ++k) a[rank][k] = inv * a[rank][k];
        for (int k = 0; k < p; ++k) qm[rank][k] = inv * qm[rank][k];
        for (int i = 0; i < p; ++i) {
            if (i == rank || a[i][j].is_zero()) continue;
            RingElem f = a[i][j];
            for (int k = 0; k < q; ++k) a[i][k] = a[i][k] - f * a[rank][k];
            for (int k = 0; k < p; ++k) qm[i][k] = qm[i][k] - f * qm[rank][k];
        }
        pivots[m.cols().at(j)] = m.rows().at(rank);
        ++rank;
    }
    FieldReduction out{IndexedMatrix(m.ring(), m.rows(), m.rows()),
                       IndexedMatrix(m.ring(), m.rows(), m.cols()), rank, std::move(pivots)};
    for (int i = 0; i < p; ++i) {
        for (int k = 0; k < p; ++k) out.Q.set(m.rows().at(i), m.rows().at(k), qm[i][k]);
        for (int j = 0; j < q; ++j) out.reduced.set(m.rows().at(i), m.cols().at(j), a[i][j]);
    }
    return out;
}

// Diagonalize an integer p x t matrix by unimodular row and column
// operations. Returns the diagonal and the inverse of the row transform
// (columns of Uinv are what the construction below actually needs).
struct SmithDiagonal {
    std::vector<Int> diag;                 // length min(p,t)
    std::vector<std::vector<Int>> uinv;    // p x p
};

inline SmithDiagonal smith_diagonalize(std::vector<std::vector<Int>> w, int p, int t) {
    std::vector<std::vector<Int>> uinv(p, std::vector<Int>(p, 0));
    for (int i = 0; i < p; ++i) uinv[i][i] = 1;

    // Row op w_i += f*w_j corresponds to Uinv column j -= f * column i.
    auto row_add = [&](int i, int j, const Int& f) {
        for (int k = 0; k < t; ++k) w[i][k] += f * w[j][k];
        for (int k = 0; k < p; ++k) uinv[k][j] -= f * uinv[k][i];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(w[i], w[j]);
        for (int k = 0; k < p; ++k) std::swap(uinv[k][i], uinv[k][j]);
    };
    auto row_negate = [&](int i) {
        for (int k = 0; k < t; ++k) w[i][k] = -w[i][k];
        for (int k = 0; k < p; ++k) uinv[k][i] = -uinv[k][i];
    };
    auto col_add = [&](int j, int i, const Int& f) {  // col_j += f * col_i
        for (int k = 0; k < p; ++k) w[k][j] += f * w[k][i];
    };
    auto col_swap = [&](int i, int j) {
        for (int k = 0; k < p; ++k) std::swap(w[k][i], w[k][j]);
    };

    const int d = std::min(p, t);
    std::vector<Int> diag(d, 0);
    for (int k = 0; k < d; ++k) {
        for (;;) {
            // smallest nonzero entry in the remaining block -> pivot
            int bi = -1, bj = -1;
            for (int i = k; i < p; ++i)
                for (int j = k; j < t; ++j)
                    if (w[i][j] != 0 && (bi < 0 || abs(w[i][j]) < abs(w[bi][bj]))) { bi = i; bj = j; }
            if (bi < 0) return {std::move(diag), std::move(uinv)};  // rest is zero
            if (bi != k) row_swap(k, bi);
            if (bj != k) col_swap(k, bj);
            bool again = false;
            for (int i = k + 1; i < p; ++i) {
                if (w[i][k] == 0) continue;
                Int f = w[i][k] / w[k][k];
                row_add(i, k, -f);
                if (w[i][k] != 0) again = true;
            }
            for (int j = k + 1; j < t; ++j) {
                if (w[k][j] == 0) continue;
                Int f = w[k][j] / w[k][k];
                col_add(j, k, -f);
                if (w[k][j] != 0) again = true;
            }
            if (!again) break;
        }
        if (w[k][k] < 0) row_negate(k);
        diag[k] = w[k][k];
    }
    return {std::move(diag), std::move(uinv)};
}

// Best realizable column subset: largest size first, then lexicographically
// smallest. Empty optional when even single columns fail.
inline std::optional<IndexSet> best_column_subset(const IndexedMatrix& m) {
    const int tmax = std::min(m.row_count(), m.col_count());
    for (int t = tmax; t >= 1; --t)
        for (const IndexSet& c : subsets_of_size(m.cols(), t))
            if (column_subset_realizable(m, c)) return c;
    return std::nullopt;
}

}  // namespace detail

/// The maximum, over invertible Q, of the number of distinct standard unit
/// vectors among the columns of QM.
inline int unit_column_capacity(const IndexedMatrix& m) {
    switch (m.ring().kind()) {
        case RingKind::PrimeField:
        case RingKind::Rationals:
            return detail::field_row_reduce(m).rank;
        case RingKind::Integers:
        case RingKind::IntegersMod: {
            auto best = detail::best_column_subset(m);
            return best ? best->size() : 0;
        }
    }
    throw std::logic_error("unit_column_capacity: unsupported ring");
}

/// Constructive form: returns Q attaining the capacity. Over Z and Z/n the
/// chosen columns are completed to an invertible matrix whose inverse sends
/// them to the first standard unit vectors; over fields plain RREF does it.
inline EchelonResult reduce(const IndexedMatrix& m) {
    const int p = m.row_count();

    auto finish = [&](EchelonResult res) {
        // maximality forces exactly p - t rows without unit entries
        int rows_without_units = 0;
        for (int r : res.reduced.rows()) {
            bool has_unit = false;
            for (int c : res.reduced.cols())
                if (res.reduced.at(r, c).is_unit()) { has_unit = true; break; }
            if (!has_unit) ++rows_without_units;
        }
        if (rows_without_units != p - res.t)
            throw std::logic_error("reduce: row-without-unit count disagrees with t");
        if (count_unit_columns(res.reduced) != res.t)
            throw std::logic_error("reduce: unit column count disagrees with t");
        return res;
    };

    if (m.ring().is_field()) {
        auto fr = detail::field_row_reduce(m);
        return finish({std::move(fr.Q), std::move(fr.reduced), fr.rank,
                       std::move(fr.pivot_assignment)});
    }
    if (m.ring().kind() != RingKind::Integers && m.ring().kind() != RingKind::IntegersMod)
        throw std::logic_error("reduce: unsupported ring");

    auto best = detail::best_column_subset(m);
    if (!best)
        return finish({IndexedMatrix::identity(m.ring(), m.rows()), m, 0, {}});

    const IndexSet& c = *best;
    const int t = c.size();
    std::vector<std::vector<Int>> lift(p, std::vector<Int>(t));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < t; ++j)
            lift[i][j] = m.at(m.rows().at(i), c.at(j)).int_value();

    auto sd = detail::smith_diagonalize(lift, p, t);

    // X = [ M[A,C] | trailing columns of Uinv ]; invertible because the
    // elementary divisors of M[A,C] are units in the ring.
    IndexedMatrix x(m.ring(), m.rows(), m.rows());
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < t; ++j) x.set(m.rows().at(i), m.rows().at(j), m.at(m.rows().at(i), c.at(j)));
        for (int j = t; j < p; ++j)
            x.set(m.rows().at(i), m.rows().at(j), RingElem(m.ring(), sd.uinv[i][j]));
    }
    auto q = try_matrix_inverse(x);
    if (!q) throw std::logic_error("reduce: completion matrix is not invertible");

    IndexedMatrix qm = matmul(*q, m);
    EchelonResult res{std::move(*q), std::move(qm), t, {}};
    for (int j = 0; j < t; ++j) {
        res.pivot_assignment[c.at(j)] = m.rows().at(j);
        for (int i = 0; i < p; ++i) {
            const RingElem& e = res.reduced.at(m.rows().at(i), c.at(j));
            if ((i == j) ? !e.is_one() : !e.is_zero())
                throw std::logic_error("reduce: selected column is not a standard unit vector");
        }
    }
    return finish(std::move(res));
}

/// A matrix already carries the maximum possible number of distinct
/// standard unit vector columns.
inline bool is_reduced_echelon(const IndexedMatrix& m) {
    return count_unit_columns(m) == unit_column_capacity(m);
}

}  // namespace tvc
