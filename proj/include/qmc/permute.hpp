#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

// Digit permutations for generalized van der Corput / Halton sequences and
// the multiplicative factor vectors derived from them for generalized Faure.

namespace qmc {

struct Permutation {
    std::uint32_t base = 2;
    std::vector<std::uint16_t> map;  // image of 0..base-1

    bool is_bijection() const;
    bool operator==(const Permutation&) const = default;
};

Permutation identity_permutation(std::uint32_t base);

// Recursive permutation family of Faure (1992): pi_2 = (0,1); even b
// interleaves two copies of pi_{b/2}; odd b inserts the middle value into
// pi_{b-1}. Returns pi_2 .. pi_{b_max} (index 0 holds pi_2).
std::vector<Permutation> faure92_permutations(std::uint32_t b_max);
Permutation faure92_permutation(std::uint32_t b);

// Cyclic shift placing the 0 at index floor(b/2).
Permutation offset_permutation(const Permutation& p);

// Nonzero factor vectors for generalized Faure: drop the leading zero of
// pi_b, or shift first (offset variant) and delete the zero entry.
std::vector<std::uint32_t> factors_method1(const Permutation& p);
std::vector<std::uint32_t> factors_method2(const Permutation& p);

// Text file, one permutation per line: "base: v0 v1 ... v_{base-1}".
// '#' starts a comment. Every permutation is validated for bijectivity.
std::map<std::uint32_t, Permutation> load_permutation_set(const std::filesystem::path& path);

}  // namespace qmc
