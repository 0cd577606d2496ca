#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Exact base-b digit arithmetic: digit expansions, radical inverses,
// primes, and matrix-vector products over Z_b for prime b.

namespace qmc {

// One coordinate of a point as an exact digit vector. digits[r] is the
// coefficient of base^-(r+1) (fractional convention), or of base^r when the
// vector holds an integer expansion.
struct DigitVector {
    std::uint32_t base = 2;
    std::vector<std::uint16_t> digits;

    bool operator==(const DigitVector&) const = default;
};

// Smallest K with base^K >= 2^53, capped at 64. Points expanded to this many
// digits convert to doubles without collision.
int digit_budget(std::uint32_t base);

// Digits of m in the given base, least significant first: m = sum d_r base^r.
// Throws std::overflow_error if m >= base^K.
DigitVector integer_digits(std::uint64_t m, std::uint32_t base, int K);

// sum_r digits[r] * base^-(r+1), always in [0,1).
double radical_value(const DigitVector& d);
double radical_value(std::uint32_t base, std::span<const std::uint16_t> digits);

// Expand a real in [0,1) to K digits in the given base (truncating).
std::vector<std::uint16_t> real_digits(double x, std::uint32_t base, int K);

bool is_prime(std::uint64_t v);
std::vector<std::uint32_t> first_primes(int s);
std::uint32_t smallest_prime_geq(std::uint32_t s);

// Square K x K matrix with entries in Z_base, row-major.
struct ModMatrix {
    std::uint32_t base = 2;
    int dim = 0;
    std::vector<std::uint32_t> a;

    static ModMatrix identity(std::uint32_t base, int dim);

    std::uint32_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
    std::uint32_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }

    bool operator==(const ModMatrix&) const = default;
};

// Pascal matrix power P^c mod base: entry (r,l) = binom(l,r) c^(l-r) for l >= r,
// 0 below the diagonal. c = 0 gives the identity. Requires prime base.
ModMatrix pascal_power(std::uint32_t base, std::uint32_t c, int K);

ModMatrix mod_mat_mul(const ModMatrix& lhs, const ModMatrix& rhs);

// Output digit r = sum_l M(r,l) d_l mod base.
DigitVector mod_mat_vec(const ModMatrix& m, const DigitVector& d);

// Gaussian elimination over Z_base (base prime).
bool is_nonsingular(const ModMatrix& m);

}  // namespace qmc
