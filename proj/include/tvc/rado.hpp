#pragma once

#include "tvc/echelon.hpp"
#include "tvc/transversal.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tvc {

/// Outcome of the rank condition for independent partial transversals of
/// size k: either a witness transversal or a subfamily whose column span
/// is too small.
struct RadoReport {
    int k = 0;
    bool holds = false;
    std::optional<std::vector<int>> violating_family;  // block indices, ascending
    std::optional<IndexSet> witness_transversal;
};

inline int field_rank(const IndexedMatrix& m) {
    if (!m.ring().is_field()) throw std::domain_error("field_rank: ring is not a field");
    return detail::field_row_reduce(m).rank;
}

namespace detail {

inline IndexSet family_union(const ColumnPartition& part, const std::vector<int>& family) {
    IndexSet u;
    for (int i : family) u = u.united(part.block(i));
    return u;
}

// subfamilies as ascending index lists, in lexicographic order
inline std::vector<std::vector<int>> all_subfamilies(int n) {
    std::vector<std::vector<int>> out;
    for (int size = 0; size <= n; ++size) {
        std::vector<int> cur;
        auto rec = [&](auto&& self, int start, int need) -> void {
            if (need == 0) { out.push_back(cur); return; }
            for (int i = start; i <= n - need + 1; ++i) {
                cur.push_back(i);
                self(self, i + 1, need - 1);
                cur.pop_back();
            }
        };
        rec(rec, 1, size);
    }
    return out;
}

}  // namespace detail

/// Checks rank(M[A, U Theta]) >= k + |Theta| - n over all 2^n subfamilies.
/// On failure reports the subfamily with the most negative rank surplus;
/// on success also searches out a witness transversal, coupling the two
/// directions of the equivalence.
inline RadoReport rado_condition(const IndexedMatrix& m, const ColumnPartition& part, int k) {
    if (!m.ring().is_field()) throw std::domain_error("rado_condition: ring is not a field");
    require_partition_of(part, m);
    const int n = part.block_count();
    if (k < 0 || k > std::min(m.row_count(), n))
        throw std::invalid_argument("rado_condition: k out of range");

    RadoReport report;
    report.k = k;
    std::optional<std::vector<int>> worst;
    long long worst_surplus = 0;
    for (const auto& family : detail::all_subfamilies(n)) {
        IndexSet u = detail::family_union(part, family);
        int rank = field_rank(submatrix(m, m.rows(), u));
        long long surplus = rank - (k + static_cast<long long>(family.size()) - n);
        if (surplus < 0 && (!worst || surplus < worst_surplus)) {
            worst = family;  // subfamilies arrive in lex order, so ties keep the first
            worst_surplus = surplus;
        }
    }
    if (worst) {
        report.holds = false;
        report.violating_family = std::move(worst);
        return report;
    }
    report.holds = true;
    for (const IndexSet& j : partial_transversals(part, k))
        if (field_rank(submatrix(m, m.rows(), j)) == k) {
            report.witness_transversal = j;
            return report;
        }
    // the rank condition guarantees a witness; reaching this line is a bug
    throw std::logic_error("rado_condition: condition holds but no witness transversal found");
}

/// Field-case normal form: when no invertible transversal submatrix
/// exists, produces Q and m with the last m rows of QM null outside at
/// most m-1 blocks. None when an invertible transversal exists.
inline std::optional<std::pair<IndexedMatrix, int>> corollary_nullrow_form(
    const IndexedMatrix& m, const ColumnPartition& part) {
    if (!m.ring().is_field())
        throw std::domain_error("corollary_nullrow_form: ring is not a field");
    require_partition_of(part, m);
    if (find_invertible_transversal(m, part)) return std::nullopt;

    const int p = m.row_count();
    const int n = part.block_count();
    std::optional<std::vector<int>> best;
    long long best_surplus = 0;
    int best_rank = 0;
    for (const auto& family : detail::all_subfamilies(n)) {
        IndexSet u = detail::family_union(part, family);
        int rank = field_rank(submatrix(m, m.rows(), u));
        long long surplus = rank - (p + static_cast<long long>(family.size()) - n);
        if (surplus < 0 && (!best || surplus < best_surplus)) {
            best = family;
            best_surplus = surplus;
            best_rank = rank;
        }
    }
    if (!best)
        throw std::logic_error("corollary_nullrow_form: hypothesis holds but no deficient family");

    IndexSet u = detail::family_union(part, *best);
    auto fr = detail::field_row_reduce(submatrix(m, m.rows(), u));
    // RREF places the null rows last, so Q already has the required shape
    return std::make_pair(std::move(fr.Q), p - best_rank);
}

}  // namespace tvc
