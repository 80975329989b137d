#pragma once

#include "tvc/ring.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <vector>

namespace tvc {

/// Finite set of positive integers; iteration is always ascending, and the
/// ascending order provides the position bijection used by every matrix
/// operation that needs one.
class IndexSet {
public:
    IndexSet() = default;

    IndexSet(std::initializer_list<int> xs) : IndexSet(std::vector<int>(xs)) {}

    explicit IndexSet(std::vector<int> xs) : elems_(std::move(xs)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        if (!elems_.empty() && elems_.front() < 1)
            throw std::invalid_argument("IndexSet: indices must be positive");
    }

    static IndexSet range(int lo, int hi) {
        std::vector<int> v;
        for (int i = lo; i <= hi; ++i) v.push_back(i);
        return IndexSet(std::move(v));
    }

    int size() const { return static_cast<int>(elems_.size()); }
    bool empty() const { return elems_.empty(); }

    bool contains(int x) const {
        return std::binary_search(elems_.begin(), elems_.end(), x);
    }

    // Position of x under the ascending bijection.
    int position_of(int x) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
        if (it == elems_.end() || *it != x)
            throw std::invalid_argument("IndexSet: index " + std::to_string(x) + " not present");
        return static_cast<int>(it - elems_.begin());
    }

    int at(int pos) const { return elems_.at(static_cast<std::size_t>(pos)); }

    bool subset_of(const IndexSet& o) const {
        return std::includes(o.elems_.begin(), o.elems_.end(), elems_.begin(), elems_.end());
    }

    IndexSet united(const IndexSet& o) const {
        std::vector<int> v;
        std::set_union(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                       std::back_inserter(v));
        return IndexSet(std::move(v));
    }

    IndexSet minus(const IndexSet& o) const {
        std::vector<int> v;
        std::set_difference(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                            std::back_inserter(v));
        return IndexSet(std::move(v));
    }

    IndexSet with(int x) const {
        std::vector<int> v = elems_;
        v.push_back(x);
        return IndexSet(std::move(v));
    }

    IndexSet without(int x) const {
        std::vector<int> v;
        for (int e : elems_)
            if (e != x) v.push_back(e);
        return IndexSet(std::move(v));
    }

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }
    const std::vector<int>& elements() const { return elems_; }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
    friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.elems_ <=> b.elems_; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(elems_[i]);
        }
        return s + "}";
    }

private:
    std::vector<int> elems_;
};

/// A matrix as a map rows x cols -> R, where rows and cols are arbitrary
/// finite sets of positive integers. Entries are addressed by label, never
/// by position; submatrices keep the labels of their parent.
class IndexedMatrix {
public:
    IndexedMatrix(Ring ring, IndexSet rows, IndexSet cols)
        : ring_(std::move(ring)), rows_(std::move(rows)), cols_(std::move(cols)),
          data_(static_cast<std::size_t>(rows_.size()) * static_cast<std::size_t>(cols_.size()),
                RingElem::zero(ring_)) {}

    static IndexedMatrix identity(const Ring& ring, const IndexSet& rows) {
        IndexedMatrix m(ring, rows, rows);
        for (int r : rows) m.set(r, r, RingElem::one(ring));
        return m;
    }

    // Convenience constructor with implicit index sets 1..p, 1..q.
    static IndexedMatrix from_ints(const Ring& ring,
                                   const std::vector<std::vector<long long>>& grid) {
        int p = static_cast<int>(grid.size());
        int q = p == 0 ? 0 : static_cast<int>(grid[0].size());
        IndexedMatrix m(ring, IndexSet::range(1, p), IndexSet::range(1, q));
        for (int i = 0; i < p; ++i) {
            if (static_cast<int>(grid[i].size()) != q)
                throw std::invalid_argument("from_ints: ragged rows");
            for (int j = 0; j < q; ++j)
                m.set(i + 1, j + 1, RingElem(ring, Int(grid[i][j])));
        }
        return m;
    }

    const Ring& ring() const { return ring_; }
    const IndexSet& rows() const { return rows_; }
    const IndexSet& cols() const { return cols_; }
    int row_count() const { return rows_.size(); }
    int col_count() const { return cols_.size(); }
    bool is_square() const { return rows_.size() == cols_.size(); }

    const RingElem& at(int r, int c) const { return data_[idx(r, c)]; }

    void set(int r, int c, RingElem v) {
        require_same_ring(ring_, v.ring());
        data_[idx(r, c)] = std::move(v);
    }

    friend bool operator==(const IndexedMatrix&, const IndexedMatrix&) = default;

private:
    std::size_t idx(int r, int c) const {
        return static_cast<std::size_t>(rows_.position_of(r)) *
                   static_cast<std::size_t>(cols_.size()) +
               static_cast<std::size_t>(cols_.position_of(c));
    }

    Ring ring_;
    IndexSet rows_, cols_;
    std::vector<RingElem> data_;
};

inline IndexedMatrix submatrix(const IndexedMatrix& m, const IndexSet& rows, const IndexSet& cols) {
    if (!rows.subset_of(m.rows()) || !cols.subset_of(m.cols()))
        throw std::invalid_argument("submatrix: index sets are not subsets");
    IndexedMatrix out(m.ring(), rows, cols);
    for (int r : rows)
        for (int c : cols) out.set(r, c, m.at(r, c));
    return out;
}

inline IndexedMatrix matmul(const IndexedMatrix& a, const IndexedMatrix& b) {
    require_same_ring(a.ring(), b.ring());
    if (!(a.cols() == b.rows()))
        throw std::invalid_argument("matmul: inner index sets differ");
    IndexedMatrix out(a.ring(), a.rows(), b.cols());
    for (int r : a.rows())
        for (int c : b.cols()) {
            RingElem acc = RingElem::zero(a.ring());
            for (int k : a.cols()) acc = acc + a.at(r, k) * b.at(k, c);
            out.set(r, c, acc);
        }
    return out;
}

namespace detail {

// Fraction-free Gaussian elimination; exact over Z.
inline Int int_determinant(std::vector<std::vector<Int>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline Rat rat_determinant(std::vector<std::vector<Rat>> a) {
    const int n = static_cast<int>(a.size());
    Rat det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a[i][k] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) { std::swap(a[k], a[piv]); det = -det; }
        det *= a[k][k];
        for (int i = k + 1; i < n; ++i) {
            Rat f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

// Cofactor expansion along the first row; fine for the small orders where
// it is used, and valid in every commutative ring.
inline RingElem det_cofactor(const IndexedMatrix& m, IndexSet rows, IndexSet cols) {
    const int n = rows.size();
    if (n == 0) return RingElem::one(m.ring());
    if (n == 1) return m.at(rows.at(0), cols.at(0));
    const int r0 = rows.at(0);
    IndexSet rest = rows.without(r0);
    RingElem acc = RingElem::zero(m.ring());
    for (int j = 0; j < n; ++j) {
        const int c = cols.at(j);
        const RingElem& e = m.at(r0, c);
        if (e.is_zero()) continue;
        RingElem minor = det_cofactor(m, rest, cols.without(c));
        RingElem term = e * minor;
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace detail

/// Exact determinant, using the ascending-order bijection between the row
/// and column index sets. Cofactor expansion at small orders, fraction-free
/// elimination above (on the integer lift for modular rings).
inline RingElem determinant(const IndexedMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant: matrix is not square");
    const int n = m.row_count();
    if (n <= 4) return detail::det_cofactor(m, m.rows(), m.cols());
    switch (m.ring().kind()) {
        case RingKind::Integers:
        case RingKind::IntegersMod:
        case RingKind::PrimeField: {
            std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a[i][j] = m.at(m.rows().at(i), m.cols().at(j)).int_value();
            return RingElem(m.ring(), detail::int_determinant(std::move(a)));
        }
        case RingKind::Rationals: {
            std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a[i][j] = m.at(m.rows().at(i), m.cols().at(j)).value();
            return RingElem(m.ring(), detail::rat_determinant(std::move(a)));
        }
    }
    throw std::logic_error("determinant: unsupported ring");
}

/// det-is-unit criterion; valid in every commutative ring, including Z/n
/// with zero divisors where naive pivoting is not.
inline bool is_invertible(const IndexedMatrix& m) {
    return determinant(m).is_unit();
}

/// Inverse via adjugate times det^-1; None when the determinant is not a unit.
inline std::optional<IndexedMatrix> try_matrix_inverse(const IndexedMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("try_matrix_inverse: matrix is not square");
    RingElem d = determinant(m);
    auto dinv = d.try_inverse();
    if (!dinv) return std::nullopt;
    const int n = m.row_count();
    IndexedMatrix inv(m.ring(), m.rows(), m.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int r = m.rows().at(i), c = m.cols().at(j);
            RingElem cof = detail::det_cofactor(m, m.rows().without(r), m.cols().without(c));
            if ((i + j) % 2 != 0) cof = -cof;
            // adjugate transposes: cofactor of (i,j) lands at (j,i)
            inv.set(m.rows().at(j), m.rows().at(i), cof * *dinv);
        }
    return inv;
}

inline IndexedMatrix elementary_scale(const Ring& ring, const IndexSet& rows, int r,
                                      const RingElem& u) {
    if (!u.is_unit()) throw std::invalid_argument("elementary_scale: factor is not a unit");
    IndexedMatrix e = IndexedMatrix::identity(ring, rows);
    e.set(r, r, u);
    return e;
}

inline IndexedMatrix elementary_add(const Ring& ring, const IndexSet& rows, int target, int source,
                                    const RingElem& lambda) {
    if (target == source) throw std::invalid_argument("elementary_add: target equals source");
    IndexedMatrix e = IndexedMatrix::identity(ring, rows);
    e.set(target, source, lambda);
    return e;
}

inline IndexedMatrix row_op_scale(const IndexedMatrix& m, int r, const RingElem& u) {
    if (!u.is_unit()) throw std::invalid_argument("row_op_scale: factor is not a unit");
    IndexedMatrix out = m;
    for (int c : m.cols()) out.set(r, c, u * m.at(r, c));
    return out;
}

inline IndexedMatrix row_op_add(const IndexedMatrix& m, int target, int source,
                                const RingElem& lambda) {
    if (target == source) throw std::invalid_argument("row_op_add: target equals source");
    IndexedMatrix out = m;
    for (int c : m.cols()) out.set(target, c, m.at(target, c) + lambda * m.at(source, c));
    return out;
}

}  // namespace tvc
