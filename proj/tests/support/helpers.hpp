#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qmc/negdep.hpp"
#include "qmc/sequences.hpp"

// Shared test helpers: point sets from raw reals and the O(n^2 s) pairwise
// brute-force oracle for M_b(k). The oracle deliberately shares no code with
// the grouped implementation it checks.

namespace qmctest {

inline qmc::PointSet point_set_from_reals(std::span<const double> reals, int n, int s,
                                          std::span<const std::uint32_t> bases) {
    qmc::PointSet p = qmc::PointSet::with_layout(n, s, bases);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < s; ++j) {
            auto d = qmc::real_digits(reals[static_cast<std::size_t>(i) * s + j],
                                      bases[static_cast<std::size_t>(j)],
                                      p.kdigits[static_cast<std::size_t>(j)]);
            auto dst = p.coord_digits(i, j);
            std::copy(d.begin(), d.end(), dst.begin());
        }
    return p;
}

// Ordered-pair count by direct per-pair gamma comparison.
inline std::uint64_t m_count_brute(const qmc::CritView& view, const qmc::KVector& k) {
    std::uint64_t m = 0;
    for (int i = 0; i < view.n(); ++i)
        for (int l = i + 1; l < view.n(); ++l) {
            bool ok = true;
            for (int j = 0; j < view.s() && ok; ++j) {
                const int g = qmc::gamma_digits(view.coord_digits(i, j), view.coord_digits(l, j));
                if (g < k.k[static_cast<std::size_t>(j)]) ok = false;
            }
            if (ok) m += 2;
        }
    return m;
}

}  // namespace qmctest
