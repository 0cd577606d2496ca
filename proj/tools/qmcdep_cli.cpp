// Command-line front end: sequence generation, criterion tables, quasi-
// equidistribution audits, convergence sweeps, and histogram studies.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmc/experiments.hpp"
#include "qmc/negdep.hpp"
#include "qmc/permute.hpp"
#include "qmc/sequences.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string family = "halton";
    int s = 4;
    int n = 0;
    std::uint32_t base = 0;
    std::string perms = "identity";
    std::string factors;
    std::uint64_t start = 1;
};

qmc::Family parse_family(const std::string& name) {
    if (name == "mc") return qmc::Family::mc;
    if (name == "vdc") return qmc::Family::vdc;
    if (name == "halton") return qmc::Family::halton;
    if (name == "ghalton") return qmc::Family::ghalton;
    if (name == "faure") return qmc::Family::faure;
    if (name == "gfaure") return qmc::Family::gfaure;
    throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}

std::map<std::uint32_t, qmc::Permutation> perms_for(const std::string& kind, int s,
                                                    std::uint32_t vdc_base) {
    std::vector<std::uint32_t> bases =
        vdc_base ? std::vector<std::uint32_t>{vdc_base} : qmc::first_primes(s);
    std::map<std::uint32_t, qmc::Permutation> out;
    if (kind.rfind("file:", 0) == 0) return qmc::load_permutation_set(kind.substr(5));
    for (std::uint32_t b : bases) {
        if (kind == "identity")
            out[b] = qmc::identity_permutation(b);
        else if (kind == "faure92")
            out[b] = qmc::faure92_permutation(b);
        else if (kind == "offset")
            out[b] = qmc::offset_permutation(qmc::faure92_permutation(b));
        else
            throw CLI::ValidationError("--perms", "unknown permutation set '" + kind + "'");
    }
    return out;
}

std::vector<std::uint32_t> factors_for(const std::string& kind, std::uint32_t base) {
    if (kind == "f92") return qmc::factors_method1(qmc::faure92_permutation(base));
    if (kind == "offset") return qmc::factors_method2(qmc::faure92_permutation(base));
    if (kind.rfind("file:", 0) == 0) {
        // same line format as permutation files but entries are the factors
        std::ifstream in(kind.substr(5));
        if (!in) throw std::runtime_error("cannot open factor file " + kind.substr(5));
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            if (std::stoul(line.substr(0, colon)) != base) continue;
            std::istringstream rest(line.substr(colon + 1));
            std::vector<std::uint32_t> f;
            std::uint32_t v;
            while (rest >> v) f.push_back(v);
            if (f.empty())
                throw std::runtime_error("empty factor list for base " +
                                         std::to_string(base));
            return f;
        }
        throw std::runtime_error("factor file has no entry for base " + std::to_string(base));
    }
    throw CLI::ValidationError("--factors", "unknown factor rule '" + kind + "'");
}

qmc::SequenceSpec make_spec(const CommonFlags& c) {
    qmc::SequenceSpec spec;
    spec.family = parse_family(c.family);
    spec.s = c.s;
    spec.base = c.base;
    spec.start_index = c.start;
    if (spec.family == qmc::Family::ghalton ||
        (spec.family == qmc::Family::vdc && c.perms != "identity"))
        spec.perms = perms_for(c.perms, c.s, spec.family == qmc::Family::vdc ? c.base : 0);
    if (spec.family == qmc::Family::gfaure) {
        std::uint32_t b = c.base ? c.base : qmc::smallest_prime_geq(c.s);
        spec.factors = factors_for(c.factors.empty() ? "f92" : c.factors, b);
    }
    return spec;
}

json spec_echo(const CommonFlags& c) {
    return json{{"family", c.family}, {"s", c.s},        {"n", c.n},
                {"base", c.base},     {"perms", c.perms}, {"factors", c.factors},
                {"start", c.start}};
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("NEGDEP_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

qmc::RandKind parse_rand(const std::string& name) {
    if (name == "none") return qmc::RandKind::none;
    if (name == "shift") return qmc::RandKind::shift;
    if (name == "owen") return qmc::RandKind::owen;
    if (name == "linear") return qmc::RandKind::linear;
    throw CLI::ValidationError("--rand", "unknown randomizer '" + name + "'");
}

qmc::Integrand make_integrand(const std::string& f, int s, double c,
                              const std::string& san_path) {
    if (f == "h0") return qmc::make_h0(s);
    if (f == "h1") return qmc::make_h1(s);
    if (f == "g2") return qmc::make_g2(s, c);
    if (f == "san") {
        if (san_path.empty()) throw std::runtime_error("--f san requires --san-config");
        return qmc::make_san(qmc::load_san_config(san_path));
    }
    throw CLI::ValidationError("--f", "unknown integrand '" + f + "'");
}

// start:multiples grid, e.g. "2197:60" -> 2197, 4394, ..., 60*2197
std::vector<int> parse_ns(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--ns", "expected start:multiples");
    const long start = std::stol(text.substr(0, colon));
    const long count = std::stol(text.substr(colon + 1));
    if (start <= 0 || count <= 0)
        throw CLI::ValidationError("--ns", "start and multiples must be positive");
    std::vector<int> ns;
    for (long m = 1; m <= count; ++m) ns.push_back(static_cast<int>(start * m));
    return ns;
}

int cmd_gen(const CommonFlags& c, const std::string& out_path, bool digits) {
    qmc::PointSet p = qmc::build_point_set(make_spec(c), c.n);
    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    out << "# config: " << spec_echo(c).dump() << "\n";
    for (int j = 0; j < p.s; ++j) out << (j ? "," : "") << "x" << j + 1;
    out << "\n";
    char buf[32];
    for (int i = 0; i < p.n; ++i) {
        for (int j = 0; j < p.s; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", p.coord(i, j));
            out << (j ? "," : "") << buf;
        }
        if (digits) {
            for (int j = 0; j < p.s; ++j) {
                out << ",\"";
                auto d = p.coord_digits(i, j);
                for (std::size_t r = 0; r < d.size(); ++r) out << (r ? " " : "") << d[r];
                out << "\"";
            }
        }
        out << "\n";
    }
    std::cerr << "n=" << p.n << " s=" << p.s << " bases=";
    for (std::size_t j = 0; j < p.bases.size(); ++j)
        std::cerr << (j ? "," : "") << p.bases[j];
    std::cerr << "\n";
    return 0;
}

int cmd_criteria(const CommonFlags& c, std::uint32_t crit_base, int d, int w, int L,
                 const std::string& out_path, int threads) {
    qmc::PointSet p = qmc::build_point_set(make_spec(c), c.n);
    if (w == 0) w = c.s;
    if (L == 0) {
        L = 0;
        for (long long cells = 1; cells < c.n; cells *= crit_base) ++L;
    }
    auto r = qmc::criterion(p, crit_base, d, w, L, threads);
    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    json echo = spec_echo(c);
    echo["criterion_base"] = crit_base;
    echo["d"] = d;
    echo["w"] = w;
    echo["L"] = L;
    out << "# config: " << echo.dump() << "\n";
    out << "family,b,s,d,n,c,c_bar\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s,%u,%d,%d,%d,%.8f,%.8f\n", c.family.c_str(),
                  p.bases[0], c.s, d, c.n, r.c_max, r.c_mean);
    out << buf;
    return 0;
}

int cmd_cqe(const CommonFlags& c, std::uint32_t crit_base, int budget,
            const std::string& out_path) {
    qmc::PointSet p = qmc::build_point_set(make_spec(c), c.n);
    qmc::CqeReport rep = crit_base ? qmc::cqe_check(p, crit_base, budget)
                                   : qmc::cqe_check(p, p.bases, budget);
    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    json echo = spec_echo(c);
    echo["criterion_base"] = crit_base;
    echo["budget_log2"] = budget;
    out << "# config: " << echo.dump() << "\n";
    out << "checked,violations,ok\n"
        << rep.checked << "," << rep.violations.size() << "," << (rep.ok ? 1 : 0) << "\n";
    for (const auto& [k, value] : rep.violations) {
        out << "# violation C=" << value << " k=";
        for (std::size_t j = 0; j < k.k.size(); ++j) out << (j ? " " : "") << k.k[j];
        out << "\n";
    }
    return rep.ok ? 0 : 1;
}

int cmd_converge(const CommonFlags& c, const std::string& f_name, double g2c,
                 const std::string& san_path, const std::string& rand_name,
                 const std::string& ns_text, int V, std::uint64_t seed,
                 const std::string& out_path, int threads) {
    qmc::ExperimentPlan plan;
    plan.seq = make_spec(c);
    plan.rand = parse_rand(rand_name);
    plan.f = make_integrand(f_name, c.s, g2c, san_path);
    plan.ns = parse_ns(ns_text);
    plan.V = V;
    plan.master_seed = seed;
    auto rows = qmc::convergence_sweep(plan, threads);
    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    json echo = spec_echo(c);
    echo["f"] = f_name;
    echo["rand"] = rand_name;
    echo["ns"] = ns_text;
    echo["V"] = V;
    echo["seed"] = seed;
    out << "# config: " << echo.dump() << "\n";
    out << "n,metric,is_mse\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%d\n", r.n, r.metric, r.is_mse ? 1 : 0);
        out << buf;
    }
    return 0;
}

int cmd_hist(const CommonFlags& c, const std::string& f_name, double g2c,
             const std::string& san_path, const std::string& rand_name, int R, int V,
             std::uint64_t seed, const std::string& out_path, int threads) {
    qmc::SequenceSpec base_spec = make_spec(c);
    // deterministic variants compared against the scrambled histogram
    std::vector<std::pair<std::string, qmc::SequenceSpec>> variants;
    if (base_spec.family == qmc::Family::faure || base_spec.family == qmc::Family::gfaure) {
        CommonFlags reg = c;
        reg.family = "faure";
        variants.emplace_back("regular", make_spec(reg));
        CommonFlags gen = c;
        gen.family = "gfaure";
        gen.factors = c.factors.empty() ? "f92" : c.factors;
        variants.emplace_back(gen.factors, make_spec(gen));
    } else {
        CommonFlags reg = c;
        reg.family = "halton";
        variants.emplace_back("regular", make_spec(reg));
        CommonFlags gen = c;
        gen.family = "ghalton";
        gen.perms = c.perms == "identity" ? "offset" : c.perms;
        variants.emplace_back(gen.perms, make_spec(gen));
    }
    auto f = make_integrand(f_name, c.s, g2c, san_path);
    auto rows = qmc::histogram_study(base_spec, parse_rand(rand_name), variants, c.n, R, V,
                                     f, seed, threads);
    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    json echo = spec_echo(c);
    echo["f"] = f_name;
    echo["rand"] = rand_name;
    echo["R"] = R;
    echo["V"] = V;
    echo["seed"] = seed;
    out << "# config: " << echo.dump() << "\n";
    out << "kind,label,value\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.value);
        out << r.kind << "," << r.label << "," << buf << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-discrepancy sequence construction, scrambling and "
                 "negative-dependence quality evaluation"};
    app.require_subcommand(1);

    CommonFlags c;
    std::optional<std::uint64_t> seed_flag;
    std::string out_path, rand_name = "shift", f_name = "h1", ns_text, san_path;
    std::uint32_t crit_base = 2;
    int d = 2, w = 0, L = 0, V = 25, R = 100, threads = 1;
    double g2c = 0.25;
    bool digits = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", c.family, "mc|vdc|halton|ghalton|faure|gfaure");
        sub->add_option("--s", c.s, "dimension");
        sub->add_option("--n", c.n, "number of points");
        sub->add_option("--base", c.base, "construction base (vdc/faure)");
        sub->add_option("--perms", c.perms, "identity|faure92|offset|file:<path>");
        sub->add_option("--factors", c.factors, "f92|offset|file:<path>");
        sub->add_option("--start", c.start, "1-based start index into the sequence");
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--threads", threads, "worker threads (never changes output)");
    };

    CLI::App* gen = app.add_subcommand("gen", "write a point set as CSV");
    add_common(gen);
    gen->add_flag("--digits", digits, "append per-coordinate digit columns");

    CLI::App* crit = app.add_subcommand("criteria", "c and c-bar for a construction");
    add_common(crit);
    crit->add_option("--criterion-base", crit_base, "base for the quality criterion");
    crit->add_option("--d", d, "max nonzero components of k");
    crit->add_option("--w", w, "index window width (default s)");
    crit->add_option("--L", L, "norm bound |k| <= L (default ceil(log_base n))");

    CLI::App* cqe = app.add_subcommand("cqe", "quasi-equidistribution audit");
    add_common(cqe);
    int budget = 20;
    cqe->add_option("--criterion-base", crit_base, "0 = construction base(s)");
    cqe->add_option("--budget", budget, "partition budget log2");

    CLI::App* conv = app.add_subcommand("converge", "MSE/Var over an n-grid");
    add_common(conv);
    conv->add_option("--f", f_name, "h0|h1|g2|san");
    conv->add_option("--c", g2c, "g2 coefficient");
    conv->add_option("--san-config", san_path, "SAN JSON config");
    conv->add_option("--rand", rand_name, "shift|owen|linear|none");
    conv->add_option("--ns", ns_text, "grid start:multiples")->required();
    conv->add_option("--V", V, "replications");
    conv->add_option("--seed", seed_flag, "master seed (env NEGDEP_SEED fallback)");

    CLI::App* hist = app.add_subcommand("hist", "scrambled-MSE histogram study");
    add_common(hist);
    hist->add_option("--f", f_name, "h0|h1|g2|san");
    hist->add_option("--c", g2c, "g2 coefficient");
    hist->add_option("--san-config", san_path, "SAN JSON config");
    hist->add_option("--rand", rand_name, "owen|linear|shift");
    hist->add_option("--R", R, "independent scramblings");
    hist->add_option("--V", V, "replications per estimate");
    hist->add_option("--seed", seed_flag, "master seed (env NEGDEP_SEED fallback)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(c, out_path, digits);
        if (crit->parsed()) return cmd_criteria(c, crit_base, d, w, L, out_path, threads);
        if (cqe->parsed()) {
            std::uint32_t cb = cqe->count("--criterion-base") ? crit_base : 0;
            return cmd_cqe(c, cb, budget, out_path);
        }
        if (conv->parsed())
            return cmd_converge(c, f_name, g2c, san_path, rand_name, ns_text, V,
                                resolve_seed(seed_flag), out_path, threads);
        if (hist->parsed())
            return cmd_hist(c, f_name, g2c, san_path, rand_name, R, V,
                            resolve_seed(seed_flag), out_path, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
