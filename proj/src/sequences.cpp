#include "qmc/sequences.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qmc {

std::vector<double> PointSet::to_reals() const {
    std::vector<double> out(static_cast<std::size_t>(n) * s);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < s; ++j)
            out[static_cast<std::size_t>(i) * s + j] = coord(i, j);
    return out;
}

PointSet PointSet::with_layout(int n, int s, std::span<const std::uint32_t> bases) {
    if (n < 0 || s < 1 || static_cast<int>(bases.size()) != s)
        throw std::invalid_argument("PointSet::with_layout: bad shape");
    PointSet p;
    p.n = n;
    p.s = s;
    p.bases.assign(bases.begin(), bases.end());
    p.kdigits.resize(static_cast<std::size_t>(s));
    p.offset.resize(static_cast<std::size_t>(s) + 1, 0);
    for (int j = 0; j < s; ++j) {
        p.kdigits[static_cast<std::size_t>(j)] = digit_budget(bases[static_cast<std::size_t>(j)]);
        p.offset[static_cast<std::size_t>(j) + 1] =
            p.offset[static_cast<std::size_t>(j)] + p.kdigits[static_cast<std::size_t>(j)];
    }
    p.digits.assign(static_cast<std::size_t>(n) * p.stride(), 0);
    return p;
}

DigitVector vdc_point(std::uint64_t n, std::uint32_t base, int K, const Permutation* sigma) {
    if (n < 1) throw std::domain_error("vdc_point: index starts at 1");
    DigitVector d = integer_digits(n - 1, base, K);
    if (sigma != nullptr) {
        if (sigma->base != base) throw std::invalid_argument("vdc_point: permutation base mismatch");
        for (auto& v : d.digits) v = sigma->map[v];
    }
    return d;
}

DigitVector vdc_point(std::uint64_t n, std::uint32_t base, int K, std::span<const Permutation> per_digit) {
    if (n < 1) throw std::domain_error("vdc_point: index starts at 1");
    if (static_cast<int>(per_digit.size()) < K)
        throw std::invalid_argument("vdc_point: need one permutation per digit");
    DigitVector d = integer_digits(n - 1, base, K);
    for (int r = 0; r < K; ++r) {
        const Permutation& sr = per_digit[static_cast<std::size_t>(r)];
        if (sr.base != base) throw std::invalid_argument("vdc_point: permutation base mismatch");
        d.digits[static_cast<std::size_t>(r)] = sr.map[d.digits[static_cast<std::size_t>(r)]];
    }
    return d;
}

PointSet halton_set(int n, int s, const std::map<std::uint32_t, Permutation>* perms,
                    std::uint64_t start_index) {
    if (s < 1) throw std::domain_error("halton_set: s must be >= 1");
    auto bases = first_primes(s);
    PointSet p = PointSet::with_layout(n, s, bases);
    p.start_index = start_index;

    std::vector<const Permutation*> sigma(static_cast<std::size_t>(s), nullptr);
    if (perms != nullptr)
        for (int j = 0; j < s; ++j) {
            auto it = perms->find(bases[static_cast<std::size_t>(j)]);
            if (it == perms->end())
                throw std::invalid_argument("halton_set: missing permutation for base " +
                                            std::to_string(bases[static_cast<std::size_t>(j)]));
            if (!it->second.is_bijection())
                throw std::invalid_argument("halton_set: permutation for base " +
                                            std::to_string(bases[static_cast<std::size_t>(j)]) +
                                            " is not a bijection");
            sigma[static_cast<std::size_t>(j)] = &it->second;
        }

    for (int i = 0; i < n; ++i) {
        const std::uint64_t idx = start_index + static_cast<std::uint64_t>(i);
        for (int j = 0; j < s; ++j) {
            const std::uint32_t b = bases[static_cast<std::size_t>(j)];
            const int K = p.kdigits[static_cast<std::size_t>(j)];
            DigitVector d = integer_digits(idx - 1, b, K);
            auto dst = p.coord_digits(i, j);
            const Permutation* sg = sigma[static_cast<std::size_t>(j)];
            for (int r = 0; r < K; ++r)
                dst[static_cast<std::size_t>(r)] =
                    sg ? sg->map[d.digits[static_cast<std::size_t>(r)]] : d.digits[static_cast<std::size_t>(r)];
        }
    }
    return p;
}

PointSet faure_set(int n, int s, std::uint32_t base, const FaureOptions* opts,
                   std::uint64_t start_index) {
    if (!is_prime(base)) throw std::domain_error("faure_set: base must be prime");
    if (static_cast<std::uint32_t>(s) > base)
        throw std::domain_error("faure_set: base must be >= s");
    const int K = digit_budget(base);

    std::vector<ModMatrix> gen;
    gen.reserve(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        ModMatrix a = pascal_power(base, static_cast<std::uint32_t>(j) % base, K);
        if (opts != nullptr && !opts->factors.empty()) {
            if (static_cast<int>(opts->factors.size()) < s)
                throw std::invalid_argument("faure_set: need at least s factors");
            const std::uint32_t f = opts->factors[static_cast<std::size_t>(j)] % base;
            if (f == 0) throw std::invalid_argument("faure_set: factors must be nonzero mod base");
            for (auto& e : a.a) e = e * f % base;
        }
        if (opts != nullptr && !opts->matrices.empty()) {
            if (static_cast<int>(opts->matrices.size()) < s)
                throw std::invalid_argument("faure_set: need at least s matrices");
            const ModMatrix& L = opts->matrices[static_cast<std::size_t>(j)];
            if (L.base != base || L.dim != K)
                throw std::invalid_argument("faure_set: scrambling matrix shape mismatch");
            for (int r = 0; r < K; ++r)
                for (int c = r + 1; c < K; ++c)
                    if (L.at(r, c) != 0)
                        throw std::invalid_argument("faure_set: scrambling matrix must be lower triangular");
            if (!is_nonsingular(L)) throw std::invalid_argument("faure_set: singular scrambling matrix");
            a = mod_mat_mul(L, a);
        }
        gen.push_back(std::move(a));
    }

    std::vector<std::uint32_t> bases(static_cast<std::size_t>(s), base);
    PointSet p = PointSet::with_layout(n, s, bases);
    p.start_index = start_index;

    for (int i = 0; i < n; ++i) {
        const std::uint64_t idx = start_index + static_cast<std::uint64_t>(i);
        DigitVector a = integer_digits(idx - 1, base, K);
        // most significant nonzero position bounds the matrix product
        int top = 0;
        for (int r = K - 1; r >= 0; --r)
            if (a.digits[static_cast<std::size_t>(r)] != 0) {
                top = r + 1;
                break;
            }
        for (int j = 0; j < s; ++j) {
            const ModMatrix& M = gen[static_cast<std::size_t>(j)];
            auto dst = p.coord_digits(i, j);
            for (int r = 0; r < K; ++r) {
                std::uint64_t acc = 0;
                for (int l = 0; l < top; ++l)
                    acc += static_cast<std::uint64_t>(M.at(r, l)) * a.digits[static_cast<std::size_t>(l)];
                dst[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(acc % base);
            }
        }
    }
    return p;
}

}  // namespace qmc
