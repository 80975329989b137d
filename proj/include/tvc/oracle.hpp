#pragma once

#include "tvc/echelon.hpp"
#include "tvc/engine.hpp"
#include "tvc/transversal.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tvc {

struct VerifyResult {
    bool ok = false;
    std::string diagnostic;  // first failed check, empty when ok
};

/// From-scratch certificate check, sharing nothing with the engine beyond
/// the ring/matrix primitives. Reports the first failure instead of
/// raising.
inline VerifyResult verify_certificate(const IndexedMatrix& m, const ColumnPartition& part,
                                       const TheoremCertificate& cert) {
    if (!part.partitions(m.cols())) return {false, "partition does not cover the columns"};
    if (cert.rows_aprime.empty()) return {false, "A' empty"};
    if (!cert.rows_aprime.subset_of(m.rows())) return {false, "A' not a subset of the rows"};
    if (cert.m != cert.rows_aprime.size()) return {false, "m mismatch"};
    if (cert.m < 1 || cert.m > m.row_count()) return {false, "m out of range"};
    if (!(cert.Q.rows() == m.rows()) || !(cert.Q.cols() == m.rows()))
        return {false, "Q has wrong index sets"};
    if (!(cert.Q.ring() == m.ring())) return {false, "Q over the wrong ring"};
    if (!determinant(cert.Q).is_unit()) return {false, "Q not invertible"};

    IndexedMatrix qm = matmul(cert.Q, m);
    if (count_unit_columns(qm) != unit_column_capacity(qm))
        return {false, "QM not in reduced echelon form"};

    int bad = 0;
    for (int i = 1; i <= part.block_count(); ++i) {
        bool block_bad = false;
        for (int c : part.block(i)) {
            bool has_unit = false, has_nonunit = false;
            for (int r : cert.rows_aprime) {
                const RingElem& e = qm.at(r, c);
                if (e.is_unit()) has_unit = true;
                else if (!e.is_zero()) has_nonunit = true;
            }
            if (has_unit && !has_nonunit) { block_bad = true; break; }
        }
        if (block_bad) ++bad;
    }
    if (bad > cert.m - 1)
        return {false, "bad-block count " + std::to_string(bad) + " exceeds m-1 = " +
                           std::to_string(cert.m - 1)};
    return {true, ""};
}

/// Ground truth for the echelon module over small finite modular rings:
/// enumerate every invertible p x p matrix and maximize the distinct unit
/// column count directly.
inline int t_max_bruteforce(const IndexedMatrix& m) {
    if (!m.ring().is_modular())
        throw std::domain_error("t_max_bruteforce: ring must be Z/n or GF(p)");
    const int n = static_cast<int>(m.ring().modulus());
    const int p = m.row_count(), q = m.col_count();
    double space = 1;
    for (int i = 0; i < p * p; ++i) space *= n;
    if (space > 500000)
        throw std::runtime_error("t_max_bruteforce: search space of " + std::to_string(space) +
                                 " matrices is too large");

    std::vector<std::vector<int>> a(static_cast<std::size_t>(p), std::vector<int>(q));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<int>(m.at(m.rows().at(i), m.cols().at(j)).int_value());

    // integer determinant by cofactor expansion, p <= 3 in practice
    auto det = [&](auto&& self, const std::vector<int>& cells, std::vector<int> rows_left,
                   std::vector<int> cols_left) -> long long {
        if (rows_left.empty()) return 1;
        long long acc = 0;
        int r0 = rows_left.front();
        std::vector<int> rest(rows_left.begin() + 1, rows_left.end());
        for (std::size_t j = 0; j < cols_left.size(); ++j) {
            int e = cells[static_cast<std::size_t>(r0 * p + cols_left[j])];
            if (e == 0) continue;
            std::vector<int> cl = cols_left;
            cl.erase(cl.begin() + static_cast<long>(j));
            long long minor = self(self, cells, rest, cl);
            acc += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(e) * minor;
        }
        return acc;
    };

    auto igcd = [](long long x, long long y) {
        x = x < 0 ? -x : x;
        while (y) { long long t = x % y; x = y; y = t; }
        return x;
    };

    std::vector<int> all_rows(static_cast<std::size_t>(p)), all_cols(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) all_rows[static_cast<std::size_t>(i)] = all_cols[static_cast<std::size_t>(i)] = i;

    int best = 0;
    std::vector<int> cells(static_cast<std::size_t>(p * p), 0);
    long long total = 1;
    for (int i = 0; i < p * p; ++i) total *= n;
    for (long long code = 0; code < total; ++code) {
        long long rem = code;
        for (int i = 0; i < p * p; ++i) {
            cells[static_cast<std::size_t>(i)] = static_cast<int>(rem % n);
            rem /= n;
        }
        long long d = det(det, cells, all_rows, all_cols) % n;
        if (d < 0) d += n;
        if (igcd(d, n) != 1) continue;
        // product rows of QM, count distinct unit columns
        std::vector<bool> pivot(static_cast<std::size_t>(p), false);
        for (int j = 0; j < q; ++j) {
            int ones = 0, one_at = -1;
            bool clean = true;
            for (int i = 0; i < p && clean; ++i) {
                long long s = 0;
                for (int k = 0; k < p; ++k)
                    s += static_cast<long long>(cells[static_cast<std::size_t>(i * p + k)]) *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                s %= n;
                if (s == 1) { ++ones; one_at = i; }
                else if (s != 0) clean = false;
            }
            if (clean && ones == 1) pivot[static_cast<std::size_t>(one_at)] = true;
        }
        int count = 0;
        for (int i = 0; i < p; ++i)
            if (pivot[static_cast<std::size_t>(i)]) ++count;
        best = std::max(best, count);
        if (best == p) break;
    }
    return best;
}

constexpr const char* kRngAlgorithm = "splitmix64";

/// Fixed platform-independent 64-bit generator; the algorithm id is
/// recorded in generated instance files.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bias-free
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

struct InstanceSpec {
    Ring ring = Ring::integers();
    int p = 1, q = 1, n = 1;
    int entry_bound = 3;  // used for Z and Q sampling
    std::uint64_t seed = 0;
};

/// Deterministic instance generation from the seed: uniform entries, then a
/// random surjection of columns onto blocks. With require_hypothesis the
/// sampling rejects until no invertible transversal submatrix exists (this
/// biases the distribution; acceptable for a test corpus).
inline std::pair<IndexedMatrix, ColumnPartition> generate(const InstanceSpec& spec,
                                                          bool require_hypothesis,
                                                          int max_attempts = 5000) {
    if (spec.p < 1 || spec.q < 1 || spec.n < 1 || spec.n > spec.q)
        throw std::invalid_argument("generate: need 1 <= p and 1 <= n <= q");
    SplitMix64 rng(spec.seed);

    auto draw_entry = [&]() -> RingElem {
        if (spec.ring.is_modular())
            return RingElem(spec.ring,
                            Int(rng.below(static_cast<std::uint64_t>(spec.ring.modulus()))));
        const std::uint64_t span = 2 * static_cast<std::uint64_t>(spec.entry_bound) + 1;
        return RingElem(spec.ring, Int(static_cast<long long>(rng.below(span)) - spec.entry_bound));
    };

    auto draw_instance = [&]() -> std::pair<IndexedMatrix, ColumnPartition> {
        IndexedMatrix m(spec.ring, IndexSet::range(1, spec.p), IndexSet::range(1, spec.q));
        for (int r = 1; r <= spec.p; ++r)
            for (int c = 1; c <= spec.q; ++c) m.set(r, c, draw_entry());
        for (int tries = 0; tries < 1000; ++tries) {
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(spec.n));
            for (int c = 1; c <= spec.q; ++c)
                blocks[rng.below(static_cast<std::uint64_t>(spec.n))].push_back(c);
            bool surjective = true;
            for (const auto& b : blocks)
                if (b.empty()) { surjective = false; break; }
            if (!surjective) continue;
            std::vector<IndexSet> sets;
            for (auto& b : blocks) sets.emplace_back(std::move(b));
            return {std::move(m), ColumnPartition(std::move(sets))};
        }
        throw std::runtime_error("generate: could not draw a surjective block assignment");
    };

    if (!require_hypothesis) return draw_instance();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto inst = draw_instance();
        if (hypothesis_holds(inst.first, inst.second)) return inst;
    }
    throw std::runtime_error(
        "generate: no hypothesis-satisfying instance within the attempt cap; "
        "try a smaller p or a larger n");
}

}  // namespace tvc
