#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Test integrands over [0,1)^s with known means where available, plus a
// configurable stochastic activity network indicator.

namespace qmc {

struct Integrand {
    std::string name;
    int s = 0;
    std::function<double(std::span<const double>)> eval;
    std::optional<double> true_mean;
};

// sum_j (e^{x_j} - e + 1); integrates to 0.
Integrand make_h0(int s);

// (sum_j x_j)^2; integrates to s/3 + s(s-1)/4.
Integrand make_h1(int s);

// prod_j (1 + c (x_j - 0.5)); integrates to 1.
Integrand make_g2(int s, double c);

enum class DistKind { uniform, exponential, normal };

struct ArcSpec {
    int from = 0;
    int to = 0;
    DistKind dist = DistKind::uniform;
    std::vector<double> params;  // uniform: a,b; exponential: rate; normal: mu,sigma

    double inverse_cdf(double u) const;
};

// DAG of activities; the integrand is the indicator that the longest
// source->sink path exceeds the threshold.
struct SanNetwork {
    int nodes = 0;
    std::vector<ArcSpec> arcs;
    int source = 0;
    int sink = 0;
    double threshold = 0.0;

    std::vector<int> topo_order;  // filled by validate()

    // Throws on cycles or unreachable sink.
    void validate();
    double longest_path(std::span<const double> durations) const;
};

SanNetwork load_san_config(const std::string& path);
SanNetwork parse_san_config(const std::string& json_text);

Integrand make_san(SanNetwork net);

// Rational-approximation inverse of the standard normal CDF (Acklam).
double inverse_normal_cdf(double p);

}  // namespace qmc
