#include "qmc/permute.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmc {

bool Permutation::is_bijection() const {
    if (map.size() != base) return false;
    std::vector<bool> seen(base, false);
    for (auto v : map) {
        if (v >= base || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation identity_permutation(std::uint32_t base) {
    Permutation p;
    p.base = base;
    p.map.resize(base);
    for (std::uint32_t i = 0; i < base; ++i) p.map[i] = static_cast<std::uint16_t>(i);
    return p;
}

std::vector<Permutation> faure92_permutations(std::uint32_t b_max) {
    if (b_max < 2) throw std::domain_error("faure92_permutations: b_max must be >= 2");
    std::vector<Permutation> out;
    out.reserve(b_max - 1);
    Permutation p2;
    p2.base = 2;
    p2.map = {0, 1};
    out.push_back(p2);
    for (std::uint32_t b = 3; b <= b_max; ++b) {
        Permutation p;
        p.base = b;
        if (b % 2 == 0) {
            const auto& half = out[b / 2 - 2].map;
            p.map.reserve(b);
            for (auto v : half) p.map.push_back(static_cast<std::uint16_t>(2 * v));
            for (auto v : half) p.map.push_back(static_cast<std::uint16_t>(2 * v + 1));
        } else {
            const std::uint32_t k = (b - 1) / 2;
            p.map = out[b - 3].map;
            for (auto& v : p.map)
                if (v >= k) ++v;
            p.map.insert(p.map.begin() + k, static_cast<std::uint16_t>(k));
        }
        out.push_back(std::move(p));
    }
    return out;
}

Permutation faure92_permutation(std::uint32_t b) { return faure92_permutations(b).back(); }

Permutation offset_permutation(const Permutation& p) {
    const std::uint32_t b = p.base;
    const std::uint32_t o = (b - p.map[b / 2]) % b;
    Permutation q;
    q.base = b;
    q.map.reserve(b);
    for (auto v : p.map) q.map.push_back(static_cast<std::uint16_t>((v + o) % b));
    return q;
}

std::vector<std::uint32_t> factors_method1(const Permutation& p) {
    if (p.map.empty() || p.map[0] != 0)
        throw std::invalid_argument("factors_method1: permutation must start with 0");
    std::vector<std::uint32_t> f(p.map.begin() + 1, p.map.end());
    return f;
}

std::vector<std::uint32_t> factors_method2(const Permutation& p) {
    if (p.map.empty() || p.map[0] != 0)
        throw std::invalid_argument("factors_method2: permutation must start with 0");
    Permutation q = offset_permutation(p);
    std::vector<std::uint32_t> f;
    f.reserve(p.base - 1);
    for (auto v : q.map)
        if (v != 0) f.push_back(v);
    return f;
}

std::map<std::uint32_t, Permutation> load_permutation_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_permutation_set: cannot open " + path.string());
    std::map<std::uint32_t, Permutation> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("load_permutation_set: missing ':' at line " +
                                     std::to_string(lineno));
        std::uint32_t base = 0;
        try {
            base = static_cast<std::uint32_t>(std::stoul(line.substr(0, colon)));
        } catch (const std::exception&) {
            throw std::runtime_error("load_permutation_set: bad base at line " +
                                     std::to_string(lineno));
        }
        Permutation p;
        p.base = base;
        std::istringstream vals(line.substr(colon + 1));
        long v;
        while (vals >> v) {
            if (v < 0 || v >= static_cast<long>(base))
                throw std::runtime_error("load_permutation_set: entry out of range for base " +
                                         std::to_string(base));
            p.map.push_back(static_cast<std::uint16_t>(v));
        }
        if (!p.is_bijection())
            throw std::runtime_error("load_permutation_set: not a bijection for base " +
                                     std::to_string(base));
        out[base] = std::move(p);
    }
    return out;
}

}  // namespace qmc
