#pragma once

#include <cstdint>

#include "qmc/rng.hpp"
#include "qmc/sequences.hpp"

// Randomizations of point sets. Each one is a pure function of the input
// set and the spec; replications differ only through the replication index.

namespace qmc {

enum class RandKind { none, shift, owen, linear };

struct RandomizerSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replication = 0;
};

// One uniform digit vector per coordinate, added mod b to every point.
PointSet digital_shift(const PointSet& p, const RandomizerSpec& spec);

// Owen nested uniform scrambling: the permutation applied at digit r of
// coordinate j depends on the digit prefix 0..r-1, realized lazily from a
// counter-based generator keyed on (stream, prefix).
PointSet owen_scramble(const PointSet& p, const RandomizerSpec& spec);

// Matousek random linear scrambling: per coordinate a random non-singular
// lower-triangular matrix mod b plus a digital shift. Bases must be prime.
PointSet linear_scramble(const PointSet& p, const RandomizerSpec& spec);

PointSet apply_randomizer(RandKind kind, const PointSet& p, const RandomizerSpec& spec);

}  // namespace qmc
