#pragma once

#include "tvc/echelon.hpp"
#include "tvc/matrix.hpp"

#include <numeric>
#include <optional>
#include <vector>

namespace tvc {

/// Partition of a column index set into ordered blocks B_1..B_n. Block
/// identity matters (weights, spreads, the engine's I and S sets), so the
/// input order is preserved.
class ColumnPartition {
public:
    explicit ColumnPartition(std::vector<IndexSet> blocks) : blocks_(std::move(blocks)) {
        IndexSet seen;
        for (const IndexSet& b : blocks_) {
            if (b.empty()) throw std::invalid_argument("ColumnPartition: empty block");
            for (int c : b)
                if (seen.contains(c))
                    throw std::invalid_argument("ColumnPartition: blocks overlap at column " +
                                                std::to_string(c));
            seen = seen.united(b);
        }
        ground_ = std::move(seen);
    }

    int block_count() const { return static_cast<int>(blocks_.size()); }

    const IndexSet& block(int i) const {  // 1-based
        if (i < 1 || i > block_count()) throw std::invalid_argument("block index out of range");
        return blocks_[static_cast<std::size_t>(i - 1)];
    }

    int block_of(int col) const {  // 1-based
        for (int i = 0; i < block_count(); ++i)
            if (blocks_[static_cast<std::size_t>(i)].contains(col)) return i + 1;
        throw std::invalid_argument("block_of: column " + std::to_string(col) + " not covered");
    }

    const IndexSet& ground_set() const { return ground_; }
    bool partitions(const IndexSet& cols) const { return ground_ == cols; }
    const std::vector<IndexSet>& blocks() const { return blocks_; }

    friend bool operator==(const ColumnPartition&, const ColumnPartition&) = default;

private:
    std::vector<IndexSet> blocks_;
    IndexSet ground_;
};

inline void require_partition_of(const ColumnPartition& part, const IndexedMatrix& m) {
    if (!part.partitions(m.cols()))
        throw std::invalid_argument("partition does not cover the matrix columns");
}

/// All size-k subsets meeting each block at most once, in lexicographic
/// order of the column label lists. Empty when k exceeds the block count.
inline std::vector<IndexSet> partial_transversals(const ColumnPartition& part, int k) {
    if (k < 0) throw std::invalid_argument("partial_transversals: negative size");
    std::vector<IndexSet> out;
    if (k > part.block_count()) return out;
    const std::vector<int>& cols = part.ground_set().elements();
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(part.block_count()) + 1, false);
    auto rec = [&](auto&& self, std::size_t start, int need) -> void {
        if (need == 0) { out.emplace_back(cur); return; }
        for (std::size_t i = start; i + static_cast<std::size_t>(need) <= cols.size(); ++i) {
            int b = part.block_of(cols[i]);
            if (used[static_cast<std::size_t>(b)]) continue;
            used[static_cast<std::size_t>(b)] = true;
            cur.push_back(cols[i]);
            self(self, i + 1, need - 1);
            cur.pop_back();
            used[static_cast<std::size_t>(b)] = false;
        }
    };
    rec(rec, 0, k);
    return out;
}

/// First (lexicographically) size-p partial transversal with invertible
/// M[A,J], if any. The hypothesis of the main construction is its absence.
inline std::optional<IndexSet> find_invertible_transversal(const IndexedMatrix& m,
                                                           const ColumnPartition& part) {
    require_partition_of(part, m);
    for (const IndexSet& j : partial_transversals(part, m.row_count()))
        if (is_invertible(submatrix(m, m.rows(), j))) return j;
    return std::nullopt;
}

inline bool hypothesis_holds(const IndexedMatrix& m, const ColumnPartition& part) {
    return !find_invertible_transversal(m, part).has_value();
}

/// A column subset P with invertible M[A,P], packaged with everything the
/// proof machinery reads off it. QM restricted to P is the identity under
/// the ascending bijection, so row r at position j pairs with column P(j).
struct AdmissibleSet {
    IndexSet P;
    IndexedMatrix Q;   // inverse of M[A,P]
    IndexedMatrix QM;  // cached product
    std::vector<int> weights;           // |P n B_i|, index i-1
    std::vector<int> spread;            // blocks with nonzero weight, ascending
    std::vector<int> profile_sequence;  // weights of spread blocks, ascending
    std::vector<IndexSet> row_groups;   // A_i, index i-1

    // Column of P paired with row r under the ascending bijection.
    int partner_column(const IndexedMatrix& m, int r) const {
        return P.at(m.rows().position_of(r));
    }
};

inline std::optional<AdmissibleSet> try_admissible(const IndexedMatrix& m,
                                                   const ColumnPartition& part, const IndexSet& p) {
    require_partition_of(part, m);
    if (p.size() != m.row_count() || !p.subset_of(m.cols())) return std::nullopt;
    auto q = try_matrix_inverse(submatrix(m, m.rows(), p));
    if (!q) return std::nullopt;
    AdmissibleSet adm{p, *q, matmul(*q, m), {}, {}, {}, {}};
    const int n = part.block_count();
    adm.weights.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int j = 0; j < p.size(); ++j) {
        int b = part.block_of(p.at(j));
        ++adm.weights[static_cast<std::size_t>(b - 1)];
        groups[static_cast<std::size_t>(b - 1)].push_back(m.rows().at(j));
    }
    for (int i = 1; i <= n; ++i) {
        adm.row_groups.emplace_back(groups[static_cast<std::size_t>(i - 1)]);
        if (adm.weights[static_cast<std::size_t>(i - 1)] > 0) {
            adm.spread.push_back(i);
            adm.profile_sequence.push_back(adm.weights[static_cast<std::size_t>(i - 1)]);
        }
    }
    std::sort(adm.profile_sequence.begin(), adm.profile_sequence.end());
    return adm;
}

/// Every admissible set, in lexicographic order of P.
inline std::vector<AdmissibleSet> admissible_sets(const IndexedMatrix& m,
                                                  const ColumnPartition& part) {
    std::vector<AdmissibleSet> out;
    for (const IndexSet& p : detail::subsets_of_size(m.cols(), m.row_count()))
        if (auto adm = try_admissible(m, part, p)) out.push_back(std::move(*adm));
    return out;
}

/// Prefix-sum domination with equal totals, on monotone increasing
/// sequences of equal length.
inline bool majorizes(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("majorizes: length mismatch");
    if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end()))
        throw std::invalid_argument("majorizes: sequences must be monotone increasing");
    long long sa = 0, sb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i];
        sb += b[i];
        if (sa < sb) return false;
    }
    return sa == sb;
}

inline bool strictly_majorizes(const std::vector<int>& a, const std::vector<int>& b) {
    return a != b && majorizes(a, b);
}

/// A maximum-spread admissible set whose profile sequence is not strictly
/// majorized by another maximum-spread one; ties broken by smallest P.
inline AdmissibleSet select_extremal(const IndexedMatrix& m, const ColumnPartition& part) {
    std::vector<AdmissibleSet> all = admissible_sets(m, part);
    if (all.empty()) throw std::domain_error("select_extremal: no admissible set");
    std::size_t max_spread = 0;
    for (const auto& a : all) max_spread = std::max(max_spread, a.spread.size());
    std::vector<const AdmissibleSet*> pool;
    for (const auto& a : all)
        if (a.spread.size() == max_spread) pool.push_back(&a);
    for (const AdmissibleSet* cand : pool) {
        bool dominated = false;
        for (const AdmissibleSet* other : pool)
            if (strictly_majorizes(other->profile_sequence, cand->profile_sequence)) {
                dominated = true;
                break;
            }
        if (!dominated) return *cand;  // pool is in lex order of P already
    }
    throw std::logic_error("select_extremal: no maximal member");  // unreachable
}

}  // namespace tvc
