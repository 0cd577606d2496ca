#include <doctest.h>

#include <cmath>

#include "qmc/experiments.hpp"

using namespace qmc;

namespace {

Integrand constant_fn(int s, double kappa, std::optional<double> mean) {
    Integrand f;
    f.name = "const";
    f.s = s;
    f.true_mean = mean;
    f.eval = [kappa](std::span<const double>) { return kappa; };
    return f;
}

}  // namespace

TEST_CASE("estimate_once") {
    Integrand one = constant_fn(2, 1.0, 1.0);
    std::vector<double> pts = {0.1, 0.2, 0.7, 0.9};
    CHECK(estimate_once(pts, 2, 2, one) == 1.0);

    auto h1 = make_h1(2);
    std::vector<double> two = {0.0, 0.0, 0.5, 0.5};
    CHECK(estimate_once(two, 2, 2, h1) == 0.5);

    auto g2 = make_g2(2, 0.25);
    std::vector<double> half = {0.5, 0.5};
    CHECK(estimate_once(half, 1, 2, g2) == 1.0);

    CHECK_THROWS_AS(estimate_once(pts, 3, 2, one), std::invalid_argument);
}

TEST_CASE("constant integrand gives Var 0 and exact MSE") {
    SequenceSpec seq;
    seq.family = Family::faure;
    seq.s = 2;
    ExperimentPlan plan{seq, RandKind::shift, constant_fn(2, 3.0, 1.0), {}, 5, 11};
    auto res = run_replications(plan, 25);
    CHECK(res.is_mse);
    CHECK(res.metric == doctest::Approx(4.0));

    plan.f = constant_fn(2, 3.0, std::nullopt);
    auto var = run_replications(plan, 25);
    CHECK_FALSE(var.is_mse);
    CHECK(var.metric == 0.0);
}

TEST_CASE("run_replications is deterministic and thread-invariant") {
    SequenceSpec seq;
    seq.family = Family::halton;
    seq.s = 3;
    ExperimentPlan plan{seq, RandKind::linear, make_h1(3), {}, 8, 77};
    auto a = run_replications(plan, 64, 1);
    auto b = run_replications(plan, 64, 4);
    CHECK(a.estimates == b.estimates);
    CHECK(a.metric == b.metric);
}

TEST_CASE("plain MC matches the Var(f)/n oracle") {
    // brute-force variance of h1, s = 4
    auto h1 = make_h1(4);
    Rng rng(99);
    const int oracle_n = 2000000;
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> x(4);
    for (int i = 0; i < oracle_n; ++i) {
        for (auto& v : x) v = rng.uniform01();
        const double f = h1.eval(x);
        sum += f;
        sumsq += f * f;
    }
    const double var_f = sumsq / oracle_n - (sum / oracle_n) * (sum / oracle_n);

    SequenceSpec seq;
    seq.family = Family::mc;
    seq.s = 4;
    const int n = 10000, V = 25;
    ExperimentPlan plan{seq, RandKind::none, h1, {}, V, 31337};
    auto res = run_replications(plan, n);
    CHECK(res.is_mse);
    const double expect = var_f / n;
    // MSE over V reps is chi^2-ish; sd of the estimate ~ expect * sqrt(2/V)
    CHECK(std::abs(res.metric - expect) <= 4.0 * expect * std::sqrt(2.0 / V));
}

TEST_CASE("convergence sweep shapes and ordering") {
    SequenceSpec seq;
    seq.family = Family::faure;
    seq.s = 2;
    ExperimentPlan plan{seq, RandKind::shift, make_h1(2), {125, 250}, 4, 5};
    auto rows = convergence_sweep(plan);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 125);
    CHECK(rows[1].n == 250);

    plan.ns = {250, 125};
    CHECK_THROWS_AS(convergence_sweep(plan), std::invalid_argument);
}

TEST_CASE("metric decreases with n for h1 under RQMC") {
    SequenceSpec seq;
    seq.family = Family::faure;
    seq.s = 4;
    ExperimentPlan plan{seq, RandKind::owen, make_h1(4), {125, 3125}, 10, 424242};
    auto rows = convergence_sweep(plan, 4);
    CHECK(rows[1].metric < rows[0].metric);
}

TEST_CASE("digital shift replications are unbiased") {
    SequenceSpec seq;
    seq.family = Family::faure;
    seq.s = 4;
    const int V = 200;
    ExperimentPlan plan{seq, RandKind::shift, make_h1(4), {}, V, 8675309};
    auto res = run_replications(plan, 625, 4);
    double mean = 0.0;
    for (double e : res.estimates) mean += e;
    mean /= V;
    double sd = 0.0;
    for (double e : res.estimates) sd += (e - mean) * (e - mean);
    sd = std::sqrt(sd / (V - 1));
    CHECK(std::abs(mean - *plan.f.true_mean) <= 4.0 * sd / std::sqrt(static_cast<double>(V)));
}

TEST_CASE("histogram study row counts and determinism") {
    SequenceSpec faure;
    faure.family = Family::faure;
    faure.s = 2;
    std::vector<std::pair<std::string, SequenceSpec>> variants = {{"regular", faure}};
    auto f = make_h0(2);
    auto rows = histogram_study(faure, RandKind::owen, variants, 64, 5, 4, f, 2024);
    CHECK(rows.size() == 5 + 1 + 1);
    CHECK(rows.back().kind == "mc");

    auto again = histogram_study(faure, RandKind::owen, variants, 64, 5, 4, f, 2024);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].value == again[i].value);
}

TEST_CASE("build_point_set families") {
    SequenceSpec vdc;
    vdc.family = Family::vdc;
    vdc.s = 1;
    vdc.base = 3;
    PointSet p = build_point_set(vdc, 9);
    CHECK(p.coord(1, 0) == doctest::Approx(1.0 / 3));

    SequenceSpec mc;
    mc.family = Family::mc;
    mc.s = 2;
    CHECK_THROWS_AS(build_point_set(mc, 4), std::invalid_argument);
}
