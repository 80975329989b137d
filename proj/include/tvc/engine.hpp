#pragma once

#include "tvc/echelon.hpp"
#include "tvc/transversal.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tvc {

/// Directed arrow from row `source` to row `target` through column `column`.
/// source 0 is the distinguished vertex (row labels are positive).
struct Arrow {
    int source;
    int column;
    int target;
    friend bool operator==(const Arrow&, const Arrow&) = default;
    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

struct ConnectionGraph {
    std::vector<Arrow> base;             // D: arrows satisfying the entry conditions
    std::vector<std::vector<Arrow>> layers;  // D_1, D_2, ...
    std::vector<Arrow> arrows;           // D_P, the union of the layers
    IndexSet hat_rows;                   // rows in groups of weight <= 2
    IndexSet hat_cols;                   // columns in blocks of weight <= 1
    IndexSet target_pool;                // T: rows in groups of weight exactly 2
    bool second_kind = false;
    std::optional<int> connection_distance;  // shortest 0 -> T path length
};

struct GapViolation {
    int row;  // r in A_i
    int col;  // c in B_j with w_i >= w_j + 2 and (QM)[r,c] a unit
};

enum class Branch { FewBlocks, NoAdmissible, NoWeightTwo, FirstKind };

inline std::string branch_name(Branch b) {
    switch (b) {
        case Branch::FewBlocks: return "FewBlocks";
        case Branch::NoAdmissible: return "NoAdmissible";
        case Branch::NoWeightTwo: return "NoWeightTwo";
        case Branch::FirstKind: return "FirstKind";
    }
    return "?";
}

inline Branch branch_from_name(const std::string& s) {
    if (s == "FewBlocks") return Branch::FewBlocks;
    if (s == "NoAdmissible") return Branch::NoAdmissible;
    if (s == "NoWeightTwo") return Branch::NoWeightTwo;
    if (s == "FirstKind") return Branch::FirstKind;
    throw std::invalid_argument("unknown branch tag: " + s);
}

struct SwapStep {
    IndexSet before_P, after_P;
    int removed_col = 0, added_col = 0;
    std::size_t spread_size = 0;
    std::vector<int> profile_sequence;
    int distance_before = 0;
    std::optional<int> distance_after;  // empty once first kind
};

struct CertificateAudit {
    std::optional<AdmissibleSet> final_set;
    std::vector<int> final_weights;
    std::vector<SwapStep> trace;
};

struct TheoremCertificate {
    IndexedMatrix Q;
    IndexSet rows_aprime;
    int m = 0;
    std::vector<int> possibly_bad_blocks;  // the proof's index set I
    Branch branch = Branch::FewBlocks;
    CertificateAudit audit;
};

/// Raised by certify when an invertible transversal submatrix exists.
struct HypothesisError : std::runtime_error {
    IndexSet witness_columns;
    explicit HypothesisError(IndexSet w)
        : std::runtime_error("hypothesis fails: invertible transversal submatrix on columns " +
                             w.str()),
          witness_columns(std::move(w)) {}
};

/// Raised when a self-check of the construction fails; always a bug or a
/// genuine counterexample worth archiving, never ignorable.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// A column contains a unit entry but no non-zero non-unit, restricted to
// the given rows. This is the literal badness predicate of the conclusion.
inline bool column_possibly_bad(const IndexedMatrix& qm, const IndexSet& rows, int col) {
    bool has_unit = false;
    for (int r : rows) {
        const RingElem& e = qm.at(r, col);
        if (e.is_unit()) has_unit = true;
        else if (!e.is_zero()) return false;
    }
    return has_unit;
}

inline int bad_block_count(const IndexedMatrix& qm, const ColumnPartition& part,
                           const IndexSet& aprime) {
    int bad = 0;
    for (int i = 1; i <= part.block_count(); ++i) {
        for (int c : part.block(i))
            if (column_possibly_bad(qm, aprime, c)) { ++bad; break; }
    }
    return bad;
}

// Clear-path search: extend with arrows whose source matches the previous
// target and whose target row vanishes on every earlier path column.
inline bool exists_clear_path_to(const Arrow& start, const std::vector<Arrow>& allowed,
                                 const IndexedMatrix& qm, const IndexSet& pool) {
    std::vector<Arrow> path{start};
    auto dfs = [&](auto&& self) -> bool {
        const Arrow& last = path.back();
        if (pool.contains(last.target)) return true;
        for (const Arrow& next : allowed) {
            if (next.source != last.target) continue;
            if (std::find(path.begin(), path.end(), next) != path.end()) continue;
            bool clear = true;
            for (const Arrow& earlier : path)
                if (!qm.at(next.target, earlier.column).is_zero()) { clear = false; break; }
            if (!clear) continue;
            path.push_back(next);
            if (self(self)) return true;
            path.pop_back();
        }
        return false;
    };
    return dfs(dfs);
}

}  // namespace detail

/// The layered arrow structure of the proof: D filtered from D_0, layers
/// built inductively via clear paths into T, and the kind/distance of P.
inline ConnectionGraph build_connection_graph(const IndexedMatrix& m, const ColumnPartition& part,
                                              const AdmissibleSet& adm) {
    require_partition_of(part, m);
    ConnectionGraph g;
    const int n = part.block_count();
    for (int i = 1; i <= n; ++i) {
        int w = adm.weights[static_cast<std::size_t>(i - 1)];
        const IndexSet& group = adm.row_groups[static_cast<std::size_t>(i - 1)];
        if (w >= 1 && w <= 2) g.hat_rows = g.hat_rows.united(group);
        if (w == 2) g.target_pool = g.target_pool.united(group);
        if (w <= 1) g.hat_cols = g.hat_cols.united(part.block(i));
    }

    for (int c : g.hat_cols) {
        const int b = part.block_of(c);
        const int w = adm.weights[static_cast<std::size_t>(b - 1)];
        const int source = (w == 1) ? adm.row_groups[static_cast<std::size_t>(b - 1)].at(0) : 0;
        for (int t : g.hat_rows) {
            if (!adm.QM.at(t, c).is_unit()) continue;
            if (source == t) continue;
            g.base.push_back({source, c, t});
        }
    }
    std::sort(g.base.begin(), g.base.end());

    std::vector<Arrow> assigned;
    std::vector<Arrow> layer;
    for (const Arrow& a : g.base)
        if (g.target_pool.contains(a.target)) layer.push_back(a);
    while (!layer.empty()) {
        g.layers.push_back(layer);
        assigned.insert(assigned.end(), layer.begin(), layer.end());
        std::set<int> sources;
        for (const Arrow& a : layer) sources.insert(a.source);
        std::vector<Arrow> next;
        for (const Arrow& a : g.base) {
            if (std::find(assigned.begin(), assigned.end(), a) != assigned.end()) continue;
            if (!sources.count(a.target)) continue;
            std::vector<Arrow> allowed = assigned;
            allowed.push_back(a);
            if (detail::exists_clear_path_to(a, allowed, adm.QM, g.target_pool))
                next.push_back(a);
        }
        layer = std::move(next);
    }
    g.arrows = assigned;
    std::sort(g.arrows.begin(), g.arrows.end());

    // shortest directed 0 -> T walk in D_P
    std::map<int, int> dist;  // vertex -> arrows from 0
    dist[0] = 0;
    std::vector<int> frontier{0};
    int steps = 0;
    std::optional<int> best;
    while (!frontier.empty() && !best) {
        ++steps;
        std::vector<int> nxt;
        for (const Arrow& a : g.arrows) {
            if (!dist.count(a.source) || dist[a.source] != steps - 1) continue;
            if (g.target_pool.contains(a.target)) best = steps;
            if (!dist.count(a.target)) {
                dist[a.target] = steps;
                nxt.push_back(a.target);
            }
        }
        frontier = std::move(nxt);
    }
    g.second_kind = best.has_value();
    g.connection_distance = best;
    return g;
}

/// Pairs (r, c) with r in a group of weight w_i, c in a block of weight
/// w_j <= w_i - 2, and (QM)[r,c] a unit. Empty exactly when the Gap
/// Condition holds; extremal sets always produce an empty list.
inline std::vector<GapViolation> gap_violations(const IndexedMatrix& m,
                                                const ColumnPartition& part,
                                                const AdmissibleSet& adm) {
    require_partition_of(part, m);
    std::vector<GapViolation> out;
    const int n = part.block_count();
    for (int i = 1; i <= n; ++i) {
        const int wi = adm.weights[static_cast<std::size_t>(i - 1)];
        for (int j = 1; j <= n; ++j) {
            const int wj = adm.weights[static_cast<std::size_t>(j - 1)];
            if (wi < wj + 2) continue;
            for (int r : adm.row_groups[static_cast<std::size_t>(i - 1)])
                for (int c : part.block(j))
                    if (adm.QM.at(r, c).is_unit()) out.push_back({r, c});
        }
    }
    return out;
}

/// Improving swap for a Gap Condition violation: trade the partner column
/// of the violating row for the violating column. Grows the spread or
/// strictly improves the profile sequence.
inline AdmissibleSet gap_swap(const IndexedMatrix& m, const ColumnPartition& part,
                              const AdmissibleSet& adm, const GapViolation& v) {
    const int removed = adm.partner_column(m, v.row);
    IndexSet pnew = adm.P.without(removed).with(v.col);
    auto next = try_admissible(m, part, pnew);
    if (!next) throw CertificateError("gap_swap: swapped set is not admissible");
    return *next;
}

namespace detail {

// All shortest 0 -> T directed paths, lexicographically by arrow sequence.
inline std::vector<std::vector<Arrow>> shortest_zero_paths(const ConnectionGraph& g) {
    std::vector<std::vector<Arrow>> out;
    if (!g.connection_distance) return out;
    const int total = *g.connection_distance;
    // arrows-to-T distance per vertex
    std::map<int, int> dist_t;
    for (int v : g.target_pool) dist_t[v] = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Arrow& a : g.arrows) {
            if (!dist_t.count(a.target)) continue;
            int cand = dist_t[a.target] + 1;
            // distance from a vertex v: min over arrows out of v
            if (!dist_t.count(a.source) || dist_t[a.source] > cand) {
                // careful: dist_t[v] for v in T must stay 0
                if (g.target_pool.contains(a.source) && a.source != 0) continue;
                dist_t[a.source] = cand;
                changed = true;
            }
        }
    }
    std::vector<Arrow> path;
    auto rec = [&](auto&& self, int vertex, int remaining) -> void {
        if (remaining == 0) { out.push_back(path); return; }
        for (const Arrow& a : g.arrows) {  // g.arrows is sorted: lex order
            if (a.source != vertex) continue;
            if (remaining == 1) {
                if (!g.target_pool.contains(a.target)) continue;
            } else {
                auto it = dist_t.find(a.target);
                if (it == dist_t.end() || it->second > remaining - 1) continue;
                if (g.target_pool.contains(a.target)) continue;  // would end early
            }
            path.push_back(a);
            self(self, a.target, remaining - 1);
            path.pop_back();
        }
    };
    rec(rec, 0, total);
    return out;
}

inline bool path_is_clear(const std::vector<Arrow>& path, const IndexedMatrix& qm) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        for (std::size_t j = i + 1; j < path.size(); ++j)
            if (!qm.at(path[j].target, path[i].column).is_zero()) return false;
    return true;
}

}  // namespace detail

/// The shortest 0 -> T path used by the second-kind swap; prefers a clear
/// path among the shortest ones, deterministically.
inline std::vector<Arrow> shortest_zero_path(const ConnectionGraph& g, const IndexedMatrix& qm) {
    auto paths = detail::shortest_zero_paths(g);
    if (paths.empty()) throw std::domain_error("shortest_zero_path: graph is of the first kind");
    for (const auto& p : paths)
        if (detail::path_is_clear(p, qm)) return p;
    return paths.front();
}

struct DistanceSwap {
    AdmissibleSet next;
    std::vector<Arrow> path;
    int removed_col = 0, added_col = 0;
};

/// Second-kind move: trade the weight-2 partner column of the last path
/// target for the last path column. Keeps spread and profile, reduces the
/// connection distance.
inline DistanceSwap distance_reducing_swap(const IndexedMatrix& m, const ColumnPartition& part,
                                           const AdmissibleSet& adm, const ConnectionGraph& g) {
    if (!g.second_kind)
        throw std::domain_error("distance_reducing_swap: admissible set is of the first kind");
    std::vector<Arrow> path = shortest_zero_path(g, adm.QM);
    const Arrow& last = path.back();
    const int k = part.block_of(adm.partner_column(m, last.target));
    if (adm.weights[static_cast<std::size_t>(k - 1)] != 2)
        throw CertificateError("distance_reducing_swap: last target not in a weight-2 group");
    const int added = last.column;
    const int jb = part.block_of(added);
    if (adm.weights[static_cast<std::size_t>(jb - 1)] != 1 && path.size() > 1)
        throw CertificateError("distance_reducing_swap: last column not in a weight-1 block");
    const int removed = adm.partner_column(m, last.target);
    auto next = try_admissible(m, part, adm.P.without(removed).with(added));
    if (!next) throw CertificateError("distance_reducing_swap: swapped set is not admissible");
    return {std::move(*next), std::move(path), removed, added};
}

namespace detail {

// Arrows of D_P from which T is reachable (the arrow itself may end in T).
inline std::vector<Arrow> arrows_on_paths_to_pool(const ConnectionGraph& g) {
    std::set<int> reach;  // vertices from which T is reachable via >= 1 arrow... tracked per arrow
    std::vector<Arrow> good;
    std::set<Arrow> good_set;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Arrow& a : g.arrows) {
            if (good_set.count(a)) continue;
            if (g.target_pool.contains(a.target) || reach.count(a.target)) {
                good.push_back(a);
                good_set.insert(a);
                reach.insert(a.source);
                changed = true;
            }
        }
    }
    std::sort(good.begin(), good.end());
    return good;
}

}  // namespace detail

/// Literal check of the conclusion; throws CertificateError on failure so
/// that a subtle counting mistake becomes a reproducible artifact instead
/// of silent wrong output.
inline void self_check(const TheoremCertificate& cert, const IndexedMatrix& m,
                       const ColumnPartition& part) {
    const int p = m.row_count();
    if (cert.rows_aprime.empty()) throw CertificateError("self-check: A' empty");
    if (!cert.rows_aprime.subset_of(m.rows()))
        throw CertificateError("self-check: A' not a subset of the rows");
    if (cert.m != cert.rows_aprime.size()) throw CertificateError("self-check: m mismatch");
    if (cert.m < 1 || cert.m > p) throw CertificateError("self-check: m out of range");
    if (!is_invertible(cert.Q)) throw CertificateError("self-check: Q not invertible");
    IndexedMatrix qm = matmul(cert.Q, m);
    if (!is_reduced_echelon(qm)) throw CertificateError("self-check: QM not in reduced echelon form");
    const int bad = detail::bad_block_count(qm, part, cert.rows_aprime);
    if (bad > cert.m - 1)
        throw CertificateError("self-check: bad-block count " + std::to_string(bad) +
                               " exceeds m-1 = " + std::to_string(cert.m - 1));
}

/// The certificate constructor: dispatches on the four branches of the
/// proof and self-verifies before returning.
inline TheoremCertificate certify(const IndexedMatrix& m, const ColumnPartition& part) {
    require_partition_of(part, m);
    if (auto witness = find_invertible_transversal(m, part))
        throw HypothesisError(std::move(*witness));

    const int p = m.row_count();
    const int n = part.block_count();

    auto finish = [&](TheoremCertificate cert) {
        self_check(cert, m, part);
        return cert;
    };

    if (n < p) {
        // any Q attaining the echelon form works: with A' = A the bound
        // only needs n <= p - 1 blocks in total
        EchelonResult er = reduce(m);
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) all[static_cast<std::size_t>(i - 1)] = i;
        return finish({std::move(er.Q), m.rows(), p, std::move(all), Branch::FewBlocks, {}});
    }

    std::vector<AdmissibleSet> adms = admissible_sets(m, part);
    if (adms.empty()) {
        EchelonResult er = reduce(m);
        IndexSet aprime;
        if (er.t == 0) {
            aprime = IndexSet{m.rows().at(0)};
        } else {
            std::vector<int> rows;
            for (int r : er.reduced.rows()) {
                bool has_unit = false;
                for (int c : er.reduced.cols())
                    if (er.reduced.at(r, c).is_unit()) { has_unit = true; break; }
                if (!has_unit) rows.push_back(r);
            }
            aprime = IndexSet(std::move(rows));
            if (aprime.size() != p - er.t)
                throw CertificateError("certify: unit-free row count disagrees with t");
        }
        const int mm = aprime.size();
        return finish({std::move(er.Q), std::move(aprime), mm, {}, Branch::NoAdmissible, {}});
    }

    CertificateAudit audit;
    AdmissibleSet adm = select_extremal(m, part);
    if (!gap_violations(m, part, adm).empty())
        throw CertificateError("certify: extremal admissible set violates the Gap Condition");
    ConnectionGraph g = build_connection_graph(m, part, adm);

    while (g.second_kind) {
        const int dist_before = *g.connection_distance;
        if (dist_before < 2)
            throw CertificateError("certify: second-kind extremal set with distance < 2");
        DistanceSwap sw = distance_reducing_swap(m, part, adm, g);
        if (sw.next.spread != adm.spread || sw.next.profile_sequence != adm.profile_sequence)
            throw CertificateError("certify: distance swap changed the spread or profile");
        ConnectionGraph g2 = build_connection_graph(m, part, sw.next);
        if (g2.second_kind && *g2.connection_distance >= dist_before)
            throw CertificateError("certify: distance swap did not reduce the connection distance");
        if (!gap_violations(m, part, sw.next).empty())
            throw CertificateError("certify: Gap Condition lost after distance swap");
        audit.trace.push_back({adm.P, sw.next.P, sw.removed_col, sw.added_col,
                               sw.next.spread.size(), sw.next.profile_sequence, dist_before,
                               g2.connection_distance});
        adm = std::move(sw.next);
        g = std::move(g2);
    }

    bool has_weight2 = false, has_weight_ge2 = false;
    for (int w : adm.weights) {
        if (w == 2) has_weight2 = true;
        if (w >= 2) has_weight_ge2 = true;
    }
    if (!has_weight_ge2)
        throw CertificateError("certify: admissible set with no block of weight >= 2");

    std::vector<int> big_i;
    Branch branch;
    if (!has_weight2) {
        branch = Branch::NoWeightTwo;
        for (int i = 1; i <= n; ++i)
            if (adm.weights[static_cast<std::size_t>(i - 1)] > 2) big_i.push_back(i);
    } else {
        branch = Branch::FirstKind;
        std::vector<Arrow> on_paths = detail::arrows_on_paths_to_pool(g);
        std::set<int> s_blocks;
        for (int i = 1; i <= n; ++i) {
            if (adm.weights[static_cast<std::size_t>(i - 1)] != 1) continue;
            bool on_path = false;
            for (const Arrow& a : on_paths)
                if (part.block_of(a.column) == i) { on_path = true; break; }
            if (!on_path) s_blocks.insert(i);
        }
        for (int i = 1; i <= n; ++i)
            if (!s_blocks.count(i)) big_i.push_back(i);
    }

    IndexSet aprime;
    for (int i : big_i) aprime = aprime.united(adm.row_groups[static_cast<std::size_t>(i - 1)]);
    const int mm = aprime.size();
    audit.final_set = adm;
    audit.final_weights = adm.weights;
    return finish(
        {adm.Q, std::move(aprime), mm, std::move(big_i), branch, std::move(audit)});
}

/// Compose with the row permutation that moves A' to the last positions,
/// yielding the statement's "last m rows" form.
inline std::pair<IndexedMatrix, int> to_theorem_form(const TheoremCertificate& cert,
                                                     const IndexedMatrix& m) {
    const IndexSet& rows = m.rows();
    IndexSet rest = rows.minus(cert.rows_aprime);
    std::vector<int> order;
    for (int r : rest) order.push_back(r);
    for (int r : cert.rows_aprime) order.push_back(r);
    IndexedMatrix perm(m.ring(), rows, rows);
    for (int i = 0; i < rows.size(); ++i)
        perm.set(rows.at(i), order[static_cast<std::size_t>(i)], RingElem::one(m.ring()));
    return {matmul(perm, cert.Q), cert.m};
}

}  // namespace tvc
