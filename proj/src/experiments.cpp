#include "qmc/experiments.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace qmc {

namespace {

double kahan_mean(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

// replication-level coordinate key for Monte Carlo streams; outside the
// range used for point-set coordinates
constexpr std::uint64_t kMcCoordinate = UINT64_MAX;

std::vector<double> mc_points(int n, int s, std::uint64_t master_seed, std::uint64_t v) {
    Rng rng(derive_stream(master_seed, v, kMcCoordinate));
    std::vector<double> out(static_cast<std::size_t>(n) * s);
    for (auto& x : out) x = rng.uniform01();
    return out;
}

}  // namespace

PointSet build_point_set(const SequenceSpec& spec, int n) {
    switch (spec.family) {
        case Family::mc:
            throw std::invalid_argument("build_point_set: Monte Carlo has no deterministic point set");
        case Family::vdc: {
            if (spec.s != 1) throw std::invalid_argument("build_point_set: vdc is one-dimensional");
            const std::uint32_t b = spec.base != 0 ? spec.base : 2;
            std::vector<std::uint32_t> bases{b};
            PointSet p = PointSet::with_layout(n, 1, bases);
            p.start_index = spec.start_index;
            const Permutation* sigma = nullptr;
            auto it = spec.perms.find(b);
            if (it != spec.perms.end()) sigma = &it->second;
            for (int i = 0; i < n; ++i) {
                DigitVector d = vdc_point(spec.start_index + static_cast<std::uint64_t>(i), b,
                                          p.kdigits[0], sigma);
                auto dst = p.coord_digits(i, 0);
                std::copy(d.digits.begin(), d.digits.end(), dst.begin());
            }
            return p;
        }
        case Family::halton:
            return halton_set(n, spec.s, nullptr, spec.start_index);
        case Family::ghalton:
            return halton_set(n, spec.s, &spec.perms, spec.start_index);
        case Family::faure: {
            const std::uint32_t b =
                spec.base != 0 ? spec.base : smallest_prime_geq(static_cast<std::uint32_t>(spec.s));
            return faure_set(n, spec.s, b, nullptr, spec.start_index);
        }
        case Family::gfaure: {
            const std::uint32_t b =
                spec.base != 0 ? spec.base : smallest_prime_geq(static_cast<std::uint32_t>(spec.s));
            FaureOptions opts;
            opts.factors = spec.factors;
            return faure_set(n, spec.s, b, &opts, spec.start_index);
        }
    }
    throw std::logic_error("build_point_set: unknown family");
}

double estimate_once(std::span<const double> reals, int n, int s, const Integrand& f) {
    if (static_cast<std::size_t>(n) * s != reals.size())
        throw std::invalid_argument("estimate_once: shape mismatch");
    if (f.s != s) throw std::invalid_argument("estimate_once: integrand dimension mismatch");
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = f.eval(reals.subspan(static_cast<std::size_t>(i) * s, static_cast<std::size_t>(s)));
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return n > 0 ? sum / n : 0.0;
}

ReplicationResult run_replications(const ExperimentPlan& plan, int n, int threads) {
    if (plan.V < 2) throw std::invalid_argument("run_replications: V must be >= 2");
    if (n < 2) throw std::invalid_argument("run_replications: n must be >= 2");

    ReplicationResult res;
    res.n = n;
    res.estimates.assign(static_cast<std::size_t>(plan.V), 0.0);

    const bool is_mc = plan.seq.family == Family::mc;
    PointSet base;
    if (!is_mc) base = build_point_set(plan.seq, n);

    auto one = [&](int v) {
        std::vector<double> reals;
        if (is_mc) {
            reals = mc_points(n, plan.seq.s, plan.master_seed, static_cast<std::uint64_t>(v));
        } else {
            RandomizerSpec rs{plan.master_seed, static_cast<std::uint64_t>(v)};
            reals = apply_randomizer(plan.rand, base, rs).to_reals();
        }
        res.estimates[static_cast<std::size_t>(v)] = estimate_once(reals, n, plan.seq.s, plan.f);
    };

    const int nthreads = std::max(1, std::min(threads, plan.V));
    if (nthreads == 1) {
        for (int v = 0; v < plan.V; ++v) one(v);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (int v = t; v < plan.V; v += nthreads) one(v);
            });
        for (auto& th : pool) th.join();
    }

    if (plan.f.true_mean.has_value()) {
        res.is_mse = true;
        const double mu = *plan.f.true_mean;
        double acc = 0.0, comp = 0.0;
        for (double e : res.estimates) {
            const double d = (e - mu) * (e - mu);
            const double y = d - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        res.metric = acc / plan.V;
    } else {
        res.is_mse = false;
        const double mean = kahan_mean(res.estimates);
        double acc = 0.0;
        for (double e : res.estimates) acc += (e - mean) * (e - mean);
        res.metric = acc / (plan.V - 1);
    }
    return res;
}

std::vector<ReplicationResult> convergence_sweep(const ExperimentPlan& plan, int threads) {
    if (!std::is_sorted(plan.ns.begin(), plan.ns.end()))
        throw std::invalid_argument("convergence_sweep: sample sizes must be ascending");
    std::vector<ReplicationResult> out;
    out.reserve(plan.ns.size());
    for (int n : plan.ns) out.push_back(run_replications(plan, n, threads));
    return out;
}

std::vector<HistogramRow> histogram_study(
    const SequenceSpec& base_spec, RandKind scramble_kind,
    const std::vector<std::pair<std::string, SequenceSpec>>& variants, int n, int R, int V,
    const Integrand& f, std::uint64_t master_seed, int threads) {
    std::vector<HistogramRow> rows;
    rows.reserve(static_cast<std::size_t>(R) + variants.size() + 1);

    // Each scrambled entry gets its own master seed stream so the R MSEs are
    // independent draws from the scrambling distribution.
    ExperimentPlan scrambled{base_spec, scramble_kind, f, {}, V, 0};
    for (int r = 0; r < R; ++r) {
        scrambled.master_seed = derive_stream(master_seed, static_cast<std::uint64_t>(r), 1);
        const auto res = run_replications(scrambled, n, threads);
        rows.push_back({"scrambled", "scramble_" + std::to_string(r), res.metric});
    }

    for (const auto& [label, spec] : variants) {
        ExperimentPlan det{spec, RandKind::shift, f, {}, V,
                           derive_stream(master_seed, static_cast<std::uint64_t>(R), 2)};
        const auto res = run_replications(det, n, threads);
        rows.push_back({"deterministic", label, res.metric});
    }

    SequenceSpec mc_spec;
    mc_spec.family = Family::mc;
    mc_spec.s = base_spec.s;
    ExperimentPlan mc{mc_spec, RandKind::none, f, {}, V,
                      derive_stream(master_seed, static_cast<std::uint64_t>(R) + 1, 3)};
    const auto res = run_replications(mc, n, threads);
    rows.push_back({"mc", "mc", res.metric});
    return rows;
}

}  // namespace qmc
