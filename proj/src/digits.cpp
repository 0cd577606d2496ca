#include "qmc/digits.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmc {

int digit_budget(std::uint32_t base) {
    if (base < 2) throw std::domain_error("digit_budget: base must be >= 2");
    constexpr std::uint64_t target = std::uint64_t{1} << 53;
    std::uint64_t pow = 1;
    int k = 0;
    while (pow < target && k < 64) {
        // pow * base can overflow only once we are already past the target
        if (pow > target / base + 1) {
            ++k;
            pow = target;
            break;
        }
        pow *= base;
        ++k;
    }
    return k;
}

DigitVector integer_digits(std::uint64_t m, std::uint32_t base, int K) {
    if (base < 2) throw std::domain_error("integer_digits: base must be >= 2");
    if (K <= 0) throw std::domain_error("integer_digits: K must be positive");
    DigitVector out;
    out.base = base;
    out.digits.assign(static_cast<std::size_t>(K), 0);
    std::uint64_t rest = m;
    for (int r = 0; r < K && rest > 0; ++r) {
        out.digits[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(rest % base);
        rest /= base;
    }
    if (rest > 0)
        throw std::overflow_error("integer_digits: " + std::to_string(m) + " needs more than " +
                                  std::to_string(K) + " base-" + std::to_string(base) + " digits");
    return out;
}

double radical_value(std::uint32_t base, std::span<const std::uint16_t> digits) {
    // Horner from the least significant end keeps the sum exact for
    // digit budgets within double precision.
    double acc = 0.0;
    const double inv = 1.0 / base;
    for (std::size_t i = digits.size(); i-- > 0;) acc = (acc + digits[i]) * inv;
    return acc;
}

double radical_value(const DigitVector& d) { return radical_value(d.base, d.digits); }

std::vector<std::uint16_t> real_digits(double x, std::uint32_t base, int K) {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("real_digits: x must be in [0,1)");
    std::vector<std::uint16_t> out(static_cast<std::size_t>(K), 0);
    double rest = x;
    for (int r = 0; r < K; ++r) {
        rest *= base;
        double d = std::floor(rest);
        if (d > base - 1) d = base - 1;
        out[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(d);
        rest -= d;
    }
    return out;
}

bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::uint64_t p = 3; p * p <= v; p += 2)
        if (v % p == 0) return false;
    return true;
}

std::vector<std::uint32_t> first_primes(int s) {
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(s > 0 ? s : 0));
    for (std::uint32_t cand = 2; static_cast<int>(out.size()) < s; ++cand)
        if (is_prime(cand)) out.push_back(cand);
    return out;
}

std::uint32_t smallest_prime_geq(std::uint32_t s) {
    std::uint32_t cand = s < 2 ? 2 : s;
    while (!is_prime(cand)) ++cand;
    return cand;
}

ModMatrix ModMatrix::identity(std::uint32_t base, int dim) {
    ModMatrix m;
    m.base = base;
    m.dim = dim;
    m.a.assign(static_cast<std::size_t>(dim) * dim, 0);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

ModMatrix pascal_power(std::uint32_t base, std::uint32_t c, int K) {
    if (!is_prime(base)) throw std::domain_error("pascal_power: base must be prime");
    if (K <= 0) throw std::domain_error("pascal_power: K must be positive");
    c %= base;

    // binom(l, r) mod base by the additive Pascal recurrence.
    std::vector<std::uint32_t> binom(static_cast<std::size_t>(K) * K, 0);
    auto b_at = [&](int l, int r) -> std::uint32_t& {
        return binom[static_cast<std::size_t>(l) * K + r];
    };
    for (int l = 0; l < K; ++l) {
        b_at(l, 0) = 1;
        for (int r = 1; r <= l; ++r)
            b_at(l, r) = (b_at(l - 1, r - 1) + (r <= l - 1 ? b_at(l - 1, r) : 0)) % base;
    }

    std::vector<std::uint32_t> cpow(static_cast<std::size_t>(K), 1);
    for (int e = 1; e < K; ++e) cpow[static_cast<std::size_t>(e)] = (cpow[static_cast<std::size_t>(e - 1)] * c) % base;

    ModMatrix m;
    m.base = base;
    m.dim = K;
    m.a.assign(static_cast<std::size_t>(K) * K, 0);
    for (int r = 0; r < K; ++r)
        for (int l = r; l < K; ++l)
            m.at(r, l) = (b_at(l, r) * cpow[static_cast<std::size_t>(l - r)]) % base;
    return m;
}

ModMatrix mod_mat_mul(const ModMatrix& lhs, const ModMatrix& rhs) {
    if (lhs.base != rhs.base || lhs.dim != rhs.dim)
        throw std::invalid_argument("mod_mat_mul: dimension or base mismatch");
    ModMatrix out;
    out.base = lhs.base;
    out.dim = lhs.dim;
    out.a.assign(static_cast<std::size_t>(lhs.dim) * lhs.dim, 0);
    for (int r = 0; r < lhs.dim; ++r)
        for (int c = 0; c < lhs.dim; ++c) {
            std::uint64_t acc = 0;
            for (int t = 0; t < lhs.dim; ++t)
                acc += static_cast<std::uint64_t>(lhs.at(r, t)) * rhs.at(t, c);
            out.at(r, c) = static_cast<std::uint32_t>(acc % lhs.base);
        }
    return out;
}

DigitVector mod_mat_vec(const ModMatrix& m, const DigitVector& d) {
    if (m.base != d.base || m.dim != static_cast<int>(d.digits.size()))
        throw std::invalid_argument("mod_mat_vec: dimension or base mismatch");
    DigitVector out;
    out.base = d.base;
    out.digits.assign(d.digits.size(), 0);
    for (int r = 0; r < m.dim; ++r) {
        std::uint64_t acc = 0;
        for (int l = 0; l < m.dim; ++l)
            acc += static_cast<std::uint64_t>(m.at(r, l)) * d.digits[static_cast<std::size_t>(l)];
        out.digits[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(acc % m.base);
    }
    return out;
}

bool is_nonsingular(const ModMatrix& m) {
    if (!is_prime(m.base)) throw std::domain_error("is_nonsingular: base must be prime");
    ModMatrix w = m;
    const std::uint64_t p = m.base;
    for (int col = 0; col < w.dim; ++col) {
        int pivot = -1;
        for (int r = col; r < w.dim; ++r)
            if (w.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        if (pivot != col)
            for (int c = 0; c < w.dim; ++c) std::swap(w.at(pivot, c), w.at(col, c));
        // inverse of the pivot via Fermat
        std::uint64_t inv = 1, b = w.at(col, col), e = p - 2;
        while (e > 0) {
            if (e & 1) inv = inv * b % p;
            b = b * b % p;
            e >>= 1;
        }
        for (int r = col + 1; r < w.dim; ++r) {
            std::uint64_t factor = w.at(r, col) * inv % p;
            if (factor == 0) continue;
            for (int c = col; c < w.dim; ++c) {
                std::uint64_t v = w.at(r, c) + p * p - factor * w.at(col, c) % p;
                w.at(r, c) = static_cast<std::uint32_t>(v % p);
            }
        }
    }
    return true;
}

}  // namespace qmc
