#pragma once

#include "tvc/matrix.hpp"
#include "tvc/oracle.hpp"

#include <vector>

namespace tvc::test {

inline RingElem random_elem(const Ring& ring, SplitMix64& rng, int bound = 3) {
    if (ring.is_modular())
        return RingElem(ring, Int(rng.below(static_cast<std::uint64_t>(ring.modulus()))));
    long long v = static_cast<long long>(rng.below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
    if (ring.kind() == RingKind::Rationals) {
        long long d = static_cast<long long>(rng.below(3)) + 1;
        return RingElem(ring, Rat(Int(v), Int(d)));
    }
    return RingElem(ring, Int(v));
}

inline IndexedMatrix random_matrix(const Ring& ring, int p, int q, SplitMix64& rng, int bound = 3) {
    IndexedMatrix m(ring, IndexSet::range(1, p), IndexSet::range(1, q));
    for (int r = 1; r <= p; ++r)
        for (int c = 1; c <= q; ++c) m.set(r, c, random_elem(ring, rng, bound));
    return m;
}

// every p x q matrix with entries drawn from the given values
inline std::vector<IndexedMatrix> all_matrices(const Ring& ring, int p, int q,
                                               const std::vector<long long>& values) {
    std::vector<IndexedMatrix> out;
    const int cells = p * q;
    std::vector<std::size_t> digits(static_cast<std::size_t>(cells), 0);
    for (;;) {
        IndexedMatrix m(ring, IndexSet::range(1, p), IndexSet::range(1, q));
        for (int i = 0; i < cells; ++i)
            m.set(i / q + 1, i % q + 1,
                  RingElem(ring, Int(values[digits[static_cast<std::size_t>(i)]])));
        out.push_back(std::move(m));
        int pos = 0;
        while (pos < cells) {
            if (++digits[static_cast<std::size_t>(pos)] < values.size()) break;
            digits[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == cells) break;
    }
    return out;
}

}  // namespace tvc::test
