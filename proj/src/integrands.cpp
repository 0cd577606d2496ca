#include "qmc/integrands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qmc {

Integrand make_h0(int s) {
    Integrand f;
    f.name = "h0";
    f.s = s;
    f.true_mean = 0.0;
    f.eval = [](std::span<const double> x) {
        double acc = 0.0;
        for (double v : x) acc += std::exp(v) - std::exp(1.0) + 1.0;
        return acc;
    };
    return f;
}

Integrand make_h1(int s) {
    Integrand f;
    f.name = "h1";
    f.s = s;
    f.true_mean = s / 3.0 + s * (s - 1) / 4.0;
    f.eval = [](std::span<const double> x) {
        double acc = 0.0;
        for (double v : x) acc += v;
        return acc * acc;
    };
    return f;
}

Integrand make_g2(int s, double c) {
    Integrand f;
    f.name = "g2";
    f.s = s;
    f.true_mean = 1.0;
    f.eval = [c](std::span<const double> x) {
        double acc = 1.0;
        for (double v : x) acc *= 1.0 + c * (v - 0.5);
        return acc;
    };
    return f;
}

double inverse_normal_cdf(double p) {
    // Acklam's rational approximation, |relative error| < 1.15e-9.
    if (p <= 0.0 || p >= 1.0) throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double ArcSpec::inverse_cdf(double u) const {
    switch (dist) {
        case DistKind::uniform: {
            const double a = params.at(0), b = params.at(1);
            return a + (b - a) * u;
        }
        case DistKind::exponential: {
            const double rate = params.at(0);
            if (rate <= 0.0) throw std::domain_error("exponential rate must be positive");
            return -std::log1p(-u) / rate;
        }
        case DistKind::normal: {
            const double mu = params.at(0), sigma = params.at(1);
            if (u <= 0.0) u = 1e-16;  // durations from the open cube only
            return mu + sigma * inverse_normal_cdf(u);
        }
    }
    throw std::logic_error("ArcSpec: unknown distribution");
}

void SanNetwork::validate() {
    if (nodes < 2 || source < 0 || sink < 0 || source >= nodes || sink >= nodes)
        throw std::invalid_argument("SanNetwork: bad node indices");
    for (const auto& a : arcs)
        if (a.from < 0 || a.from >= nodes || a.to < 0 || a.to >= nodes || a.from == a.to)
            throw std::invalid_argument("SanNetwork: bad arc endpoints");

    // Kahn's algorithm; leftover nodes mean a cycle.
    std::vector<int> indeg(static_cast<std::size_t>(nodes), 0);
    for (const auto& a : arcs) ++indeg[static_cast<std::size_t>(a.to)];
    std::vector<int> stack;
    for (int v = 0; v < nodes; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    topo_order.clear();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        topo_order.push_back(v);
        for (const auto& a : arcs)
            if (a.from == v && --indeg[static_cast<std::size_t>(a.to)] == 0) stack.push_back(a.to);
    }
    if (static_cast<int>(topo_order.size()) != nodes)
        throw std::invalid_argument("SanNetwork: activity graph has a cycle");
}

double SanNetwork::longest_path(std::span<const double> durations) const {
    if (durations.size() != arcs.size())
        throw std::invalid_argument("SanNetwork: duration count mismatch");
    constexpr double kUnreached = -1e300;
    std::vector<double> dist(static_cast<std::size_t>(nodes), kUnreached);
    dist[static_cast<std::size_t>(source)] = 0.0;
    for (int v : topo_order) {
        if (dist[static_cast<std::size_t>(v)] == kUnreached) continue;
        for (std::size_t l = 0; l < arcs.size(); ++l) {
            const auto& a = arcs[l];
            if (a.from != v) continue;
            const double cand = dist[static_cast<std::size_t>(v)] + durations[l];
            if (cand > dist[static_cast<std::size_t>(a.to)]) dist[static_cast<std::size_t>(a.to)] = cand;
        }
    }
    if (dist[static_cast<std::size_t>(sink)] == kUnreached)
        throw std::invalid_argument("SanNetwork: sink unreachable from source");
    return dist[static_cast<std::size_t>(sink)];
}

SanNetwork parse_san_config(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SanNetwork net;
    net.nodes = j.at("nodes").get<int>();
    net.source = j.at("source").get<int>();
    net.sink = j.at("sink").get<int>();
    net.threshold = j.at("threshold").get<double>();
    for (const auto& arc : j.at("arcs")) {
        ArcSpec a;
        a.from = arc.at("from").get<int>();
        a.to = arc.at("to").get<int>();
        const std::string dist = arc.at("dist").get<std::string>();
        if (dist == "uniform")
            a.dist = DistKind::uniform;
        else if (dist == "exponential")
            a.dist = DistKind::exponential;
        else if (dist == "normal")
            a.dist = DistKind::normal;
        else
            throw std::invalid_argument("SanNetwork: unknown distribution '" + dist + "'");
        a.params = arc.at("params").get<std::vector<double>>();
        net.arcs.push_back(std::move(a));
    }
    net.validate();
    return net;
}

SanNetwork load_san_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_san_config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_san_config(buf.str());
}

Integrand make_san(SanNetwork net) {
    Integrand f;
    f.name = "san";
    f.s = static_cast<int>(net.arcs.size());
    f.true_mean = std::nullopt;
    f.eval = [net = std::move(net)](std::span<const double> x) {
        std::vector<double> dur(x.size());
        for (std::size_t l = 0; l < x.size(); ++l) dur[l] = net.arcs[l].inverse_cdf(x[l]);
        return net.longest_path(dur) > net.threshold ? 1.0 : 0.0;
    };
    return f;
}

}  // namespace qmc
