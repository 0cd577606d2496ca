#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qmc/digits.hpp"
#include "qmc/permute.hpp"

// Deterministic point sets: van der Corput, (generalized) Halton and
// (generalized) Faure, all held as exact digit vectors.

namespace qmc {

// n x s collection of digit vectors with per-coordinate bases and digit
// budgets. Digits of point i, coordinate j live at
// digits[i * stride + offset[j] .. + kdigits[j]).
struct PointSet {
    int n = 0;
    int s = 0;
    std::uint64_t start_index = 1;
    std::vector<std::uint32_t> bases;
    std::vector<int> kdigits;
    std::vector<int> offset;  // size s+1 prefix sums of kdigits
    std::vector<std::uint16_t> digits;

    int stride() const { return offset.empty() ? 0 : offset[static_cast<std::size_t>(s)]; }

    std::span<std::uint16_t> coord_digits(int i, int j) {
        return {digits.data() + static_cast<std::size_t>(i) * stride() + offset[static_cast<std::size_t>(j)],
                static_cast<std::size_t>(kdigits[static_cast<std::size_t>(j)])};
    }
    std::span<const std::uint16_t> coord_digits(int i, int j) const {
        return {digits.data() + static_cast<std::size_t>(i) * stride() + offset[static_cast<std::size_t>(j)],
                static_cast<std::size_t>(kdigits[static_cast<std::size_t>(j)])};
    }

    double coord(int i, int j) const {
        return radical_value(bases[static_cast<std::size_t>(j)], coord_digits(i, j));
    }

    // Row-major n x s reals.
    std::vector<double> to_reals() const;

    static PointSet with_layout(int n, int s, std::span<const std::uint32_t> bases);
};

// nth term of the (generalized) van der Corput sequence as digits. n >= 1;
// digit r of the result is sigma_r(a_r(n-1)). sigma covers every digit
// position when a single permutation is given.
DigitVector vdc_point(std::uint64_t n, std::uint32_t base, int K, const Permutation* sigma = nullptr);
DigitVector vdc_point(std::uint64_t n, std::uint32_t base, int K, std::span<const Permutation> per_digit);

// First s primes as bases; coordinate j applies perms->at(base_j) uniformly
// across digit positions when given. Points are start_index .. start_index+n-1.
PointSet halton_set(int n, int s, const std::map<std::uint32_t, Permutation>* perms = nullptr,
                    std::uint64_t start_index = 1);

struct FaureOptions {
    std::vector<std::uint32_t> factors;   // diagonal NLT scaling, f_j nonzero mod base
    std::vector<ModMatrix> matrices;      // explicit non-singular lower-triangular L_j
};

// Prime base >= s. Coordinate j of point n is A_j * digits(n-1) with
// A_j = P^{j-1} mod base, optionally scaled by f_j or pre-multiplied by L_j.
PointSet faure_set(int n, int s, std::uint32_t base, const FaureOptions* opts = nullptr,
                   std::uint64_t start_index = 1);

}  // namespace qmc
