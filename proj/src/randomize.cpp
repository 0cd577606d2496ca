#include "qmc/randomize.hpp"

#include <stdexcept>

namespace qmc {

namespace {

// Fisher-Yates permutation of Z_b driven by a derived seed.
void fill_permutation(std::uint64_t seed, std::uint32_t base, std::uint16_t* perm) {
    for (std::uint32_t i = 0; i < base; ++i) perm[i] = static_cast<std::uint16_t>(i);
    Rng rng(seed);
    for (std::uint32_t i = base - 1; i > 0; --i) {
        std::uint32_t j = rng.below(i + 1);
        std::swap(perm[i], perm[j]);
    }
}

}  // namespace

PointSet digital_shift(const PointSet& p, const RandomizerSpec& spec) {
    PointSet out = p;
    std::vector<std::uint16_t> shift(static_cast<std::size_t>(p.stride()));
    for (int j = 0; j < p.s; ++j) {
        const std::uint32_t b = p.bases[static_cast<std::size_t>(j)];
        Rng rng(derive_stream(spec.master_seed, spec.replication, static_cast<std::uint64_t>(j)));
        for (int r = 0; r < p.kdigits[static_cast<std::size_t>(j)]; ++r)
            shift[static_cast<std::size_t>(p.offset[static_cast<std::size_t>(j)] + r)] =
                static_cast<std::uint16_t>(rng.below(b));
    }
    const int stride = p.stride();
    for (int i = 0; i < p.n; ++i) {
        std::uint16_t* row = out.digits.data() + static_cast<std::size_t>(i) * stride;
        for (int j = 0; j < p.s; ++j) {
            const std::uint32_t b = p.bases[static_cast<std::size_t>(j)];
            for (int r = p.offset[static_cast<std::size_t>(j)]; r < p.offset[static_cast<std::size_t>(j) + 1]; ++r)
                row[r] = static_cast<std::uint16_t>((row[r] + shift[static_cast<std::size_t>(r)]) % b);
        }
    }
    return out;
}

PointSet owen_scramble(const PointSet& p, const RandomizerSpec& spec) {
    PointSet out = p;
    std::vector<std::uint16_t> perm;
    for (int j = 0; j < p.s; ++j) {
        const std::uint32_t b = p.bases[static_cast<std::size_t>(j)];
        const int K = p.kdigits[static_cast<std::size_t>(j)];
        const std::uint64_t stream =
            derive_stream(spec.master_seed, spec.replication, static_cast<std::uint64_t>(j));
        perm.resize(b);
        for (int i = 0; i < p.n; ++i) {
            auto src = p.coord_digits(i, j);
            auto dst = out.coord_digits(i, j);
            // Chained prefix hash: equal prefixes of the original digits see
            // the identical permutation at the next level.
            std::uint64_t h = mix64(stream ^ 0x5851F42D4C957F2Dull);
            for (int r = 0; r < K; ++r) {
                fill_permutation(h, b, perm.data());
                const std::uint16_t d = src[static_cast<std::size_t>(r)];
                dst[static_cast<std::size_t>(r)] = perm[d];
                h = mix64(h ^ (static_cast<std::uint64_t>(d) + 1));
            }
        }
    }
    return out;
}

PointSet linear_scramble(const PointSet& p, const RandomizerSpec& spec) {
    for (auto b : p.bases)
        if (!is_prime(b)) throw std::domain_error("linear_scramble: all bases must be prime");
    PointSet out = p;
    for (int j = 0; j < p.s; ++j) {
        const std::uint32_t b = p.bases[static_cast<std::size_t>(j)];
        const int K = p.kdigits[static_cast<std::size_t>(j)];
        Rng rng(derive_stream(spec.master_seed, spec.replication, static_cast<std::uint64_t>(j)));
        // Lower-triangular with nonzero diagonal, then an extra digit shift.
        std::vector<std::uint32_t> L(static_cast<std::size_t>(K) * K, 0);
        for (int r = 0; r < K; ++r) {
            for (int c = 0; c < r; ++c) L[static_cast<std::size_t>(r) * K + c] = rng.below(b);
            L[static_cast<std::size_t>(r) * K + r] = 1 + rng.below(b - 1);
        }
        std::vector<std::uint16_t> e(static_cast<std::size_t>(K));
        for (int r = 0; r < K; ++r) e[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(rng.below(b));

        for (int i = 0; i < p.n; ++i) {
            auto src = p.coord_digits(i, j);
            auto dst = out.coord_digits(i, j);
            for (int r = 0; r < K; ++r) {
                std::uint64_t acc = e[static_cast<std::size_t>(r)];
                const std::uint32_t* row = L.data() + static_cast<std::size_t>(r) * K;
                for (int c = 0; c <= r; ++c)
                    acc += static_cast<std::uint64_t>(row[c]) * src[static_cast<std::size_t>(c)];
                dst[static_cast<std::size_t>(r)] = static_cast<std::uint16_t>(acc % b);
            }
        }
    }
    return out;
}

PointSet apply_randomizer(RandKind kind, const PointSet& p, const RandomizerSpec& spec) {
    switch (kind) {
        case RandKind::none: return p;
        case RandKind::shift: return digital_shift(p, spec);
        case RandKind::owen: return owen_scramble(p, spec);
        case RandKind::linear: return linear_scramble(p, spec);
    }
    throw std::logic_error("apply_randomizer: unknown kind");
}

}  // namespace qmc
