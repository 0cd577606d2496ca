#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmc/integrands.hpp"
#include "qmc/randomize.hpp"
#include "qmc/sequences.hpp"

// Replication engine: build a point set, randomize it V times, evaluate an
// integrand, and report MSE (known mean) or sample variance.

namespace qmc {

enum class Family { mc, vdc, halton, ghalton, faure, gfaure };

struct SequenceSpec {
    Family family = Family::halton;
    int s = 1;
    std::uint32_t base = 0;                    // vdc/faure; 0 picks smallest prime >= s
    std::map<std::uint32_t, Permutation> perms;  // ghalton (and vdc)
    std::vector<std::uint32_t> factors;          // gfaure
    std::uint64_t start_index = 1;
};

// Deterministic construction. Family::mc is handled by the replication
// engine, not here.
PointSet build_point_set(const SequenceSpec& spec, int n);

struct ExperimentPlan {
    SequenceSpec seq;
    RandKind rand = RandKind::shift;
    Integrand f;
    std::vector<int> ns;
    int V = 25;
    std::uint64_t master_seed = 0;
};

// Mean of f over the rows of an n x s real matrix, compensated summation.
double estimate_once(std::span<const double> reals, int n, int s, const Integrand& f);

struct ReplicationResult {
    int n = 0;
    std::vector<double> estimates;  // mu_hat_v, v = 1..V
    double metric = 0.0;
    bool is_mse = false;            // MSE when the true mean is known, Var otherwise
};

ReplicationResult run_replications(const ExperimentPlan& plan, int n, int threads = 1);

// One result per entry of plan.ns (ascending).
std::vector<ReplicationResult> convergence_sweep(const ExperimentPlan& plan, int threads = 1);

struct HistogramRow {
    std::string kind;   // "scrambled", "deterministic", "mc"
    std::string label;
    double value = 0.0;
};

// R independently seeded scrambled-MSE values, one shifted-MSE per
// deterministic variant, and a Monte Carlo baseline. V replications each.
std::vector<HistogramRow> histogram_study(
    const SequenceSpec& base_spec, RandKind scramble_kind,
    const std::vector<std::pair<std::string, SequenceSpec>>& variants, int n, int R, int V,
    const Integrand& f, std::uint64_t master_seed, int threads = 1);

}  // namespace qmc
