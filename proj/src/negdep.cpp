#include "qmc/negdep.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

namespace qmc {

int gamma_digits(std::span<const std::uint16_t> x, std::span<const std::uint16_t> y) {
    if (x.size() != y.size()) throw std::invalid_argument("gamma_digits: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return static_cast<int>(i);
    return kGammaInfinity;
}

int gamma_digits(const DigitVector& x, const DigitVector& y) {
    if (x.base != y.base) throw std::invalid_argument("gamma_digits: base mismatch");
    return gamma_digits(std::span<const std::uint16_t>(x.digits),
                        std::span<const std::uint16_t>(y.digits));
}

int gamma_value(double x, double y, std::uint32_t base) {
    const int K = digit_budget(base);
    auto dx = real_digits(x, base, K);
    auto dy = real_digits(y, base, K);
    return gamma_digits(std::span<const std::uint16_t>(dx), std::span<const std::uint16_t>(dy));
}

int KVector::norm() const {
    int acc = 0;
    for (int v : k) acc += v;
    return acc;
}

int KVector::nonzero_count() const {
    int acc = 0;
    for (int v : k) acc += v > 0 ? 1 : 0;
    return acc;
}

int KVector::range() const {
    int first = -1, last = -1;
    for (std::size_t j = 0; j < k.size(); ++j)
        if (k[j] > 0) {
            if (first < 0) first = static_cast<int>(j);
            last = static_cast<int>(j);
        }
    return first < 0 ? 0 : last - first;
}

CritView::CritView(const PointSet& p, std::span<const std::uint32_t> crit_bases) {
    if (static_cast<int>(crit_bases.size()) != p.s)
        throw std::invalid_argument("CritView: need one criterion base per coordinate");
    n_ = p.n;
    s_ = p.s;
    bases_.assign(crit_bases.begin(), crit_bases.end());
    kdigits_.resize(static_cast<std::size_t>(s_));
    digs_.resize(static_cast<std::size_t>(s_));
    for (int j = 0; j < s_; ++j) {
        const std::uint32_t bc = bases_[static_cast<std::size_t>(j)];
        if (bc < 2) throw std::domain_error("CritView: criterion base must be >= 2");
        if (bc == p.bases[static_cast<std::size_t>(j)]) {
            // construction base: keep the exact digits
            const int K = p.kdigits[static_cast<std::size_t>(j)];
            kdigits_[static_cast<std::size_t>(j)] = K;
            auto& d = digs_[static_cast<std::size_t>(j)];
            d.resize(static_cast<std::size_t>(n_) * K);
            for (int i = 0; i < n_; ++i) {
                auto src = p.coord_digits(i, j);
                std::copy(src.begin(), src.end(), d.begin() + static_cast<std::size_t>(i) * K);
            }
        } else {
            const int K = digit_budget(bc);
            kdigits_[static_cast<std::size_t>(j)] = K;
            auto& d = digs_[static_cast<std::size_t>(j)];
            d.resize(static_cast<std::size_t>(n_) * K);
            for (int i = 0; i < n_; ++i) {
                auto ex = real_digits(p.coord(i, j), bc, K);
                std::copy(ex.begin(), ex.end(), d.begin() + static_cast<std::size_t>(i) * K);
            }
        }
    }
}

CritView::CritView(const PointSet& p, std::uint32_t crit_base)
    : CritView(p, std::vector<std::uint32_t>(static_cast<std::size_t>(p.s), crit_base)) {}

std::uint64_t CritView::prefix_key(int i, int j, int t) const {
    if (t > kdigits(j)) throw std::out_of_range("prefix_key: digit budget exceeded");
    const std::uint16_t* d = digs_[static_cast<std::size_t>(j)].data() +
                             static_cast<std::size_t>(i) * kdigits(j);
    const std::uint64_t b = base(j);
    std::uint64_t key = 0;
    for (int r = 0; r < t; ++r) key = key * b + d[r];
    return key;
}

namespace {

// prod_j b_j^{k_j} or nullopt on 64-bit overflow
std::optional<std::uint64_t> partition_cells(const CritView& view, const KVector& k) {
    unsigned __int128 prod = 1;
    for (int j = 0; j < view.s(); ++j)
        for (int t = 0; t < k.k[static_cast<std::size_t>(j)]; ++t) {
            prod *= view.base(j);
            if (prod > static_cast<unsigned __int128>(UINT64_MAX)) return std::nullopt;
        }
    return static_cast<std::uint64_t>(prod);
}

constexpr std::uint64_t kCountingLimit = std::uint64_t{1} << 22;

std::uint64_t pairs_from_sorted(std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    std::uint64_t m = 0, run = 1;
    for (std::size_t i = 1; i <= keys.size(); ++i) {
        if (i < keys.size() && keys[i] == keys[i - 1]) {
            ++run;
        } else {
            m += run * (run - 1);
            run = 1;
        }
    }
    return m;
}

}  // namespace

std::uint64_t m_count(const CritView& view, const KVector& k) {
    if (static_cast<int>(k.k.size()) != view.s())
        throw std::invalid_argument("m_count: k dimension mismatch");
    const std::uint64_t n = static_cast<std::uint64_t>(view.n());
    if (k.norm() == 0) return n * (n - 1);
    for (int j = 0; j < view.s(); ++j) {
        const int kj = k.k[static_cast<std::size_t>(j)];
        if (kj < 0) throw std::domain_error("m_count: negative k component");
        if (kj > view.kdigits(j)) throw std::out_of_range("m_count: digit budget exceeded");
    }

    auto cells = partition_cells(view, k);
    if (cells.has_value()) {
        const std::uint64_t prod = *cells;
        static thread_local std::vector<std::uint64_t> keys;
        keys.resize(n);
        for (int i = 0; i < view.n(); ++i) {
            std::uint64_t key = 0;
            for (int j = 0; j < view.s(); ++j) {
                const int kj = k.k[static_cast<std::size_t>(j)];
                if (kj == 0) continue;
                std::uint64_t scale = 1;
                for (int t = 0; t < kj; ++t) scale *= view.base(j);
                key = key * scale + view.prefix_key(i, j, kj);
            }
            keys[static_cast<std::size_t>(i)] = key;
        }
        if (prod <= kCountingLimit) {
            static thread_local std::vector<std::uint32_t> counts;
            if (counts.size() < prod) counts.resize(prod, 0);
            for (auto key : keys) ++counts[key];
            std::uint64_t m = 0;
            for (auto key : keys) {
                const std::uint64_t c = counts[key];
                if (c != 0) {
                    m += c * (c - 1);
                    counts[key] = 0;
                }
            }
            return m;
        }
        return pairs_from_sorted(keys);
    }

    // Partition finer than 2^64 cells: compare concatenated digit prefixes.
    std::vector<std::vector<std::uint16_t>> tuples(n);
    for (int i = 0; i < view.n(); ++i) {
        auto& t = tuples[static_cast<std::size_t>(i)];
        for (int j = 0; j < view.s(); ++j) {
            auto d = view.coord_digits(i, j);
            t.insert(t.end(), d.begin(), d.begin() + k.k[static_cast<std::size_t>(j)]);
        }
    }
    std::sort(tuples.begin(), tuples.end());
    std::uint64_t m = 0, run = 1;
    for (std::size_t i = 1; i <= tuples.size(); ++i) {
        if (i < tuples.size() && tuples[i] == tuples[i - 1]) {
            ++run;
        } else {
            m += run * (run - 1);
            run = 1;
        }
    }
    return m;
}

double c_value(const CritView& view, const KVector& k) {
    if (view.n() < 2) throw std::domain_error("c_value: need at least 2 points");
    const std::uint64_t m = m_count(view, k);
    double scale = 1.0;
    for (int j = 0; j < view.s(); ++j)
        scale *= std::pow(static_cast<double>(view.base(j)), k.k[static_cast<std::size_t>(j)]);
    const double n = static_cast<double>(view.n());
    return scale * static_cast<double>(m) / (n * (n - 1.0));
}

double net_closed_form(std::uint32_t b, int m, int knorm) {
    if (b < 2 || m < 0) throw std::domain_error("net_closed_form: need b >= 2, m >= 0");
    if (m == 0) throw std::domain_error("net_closed_form: b^m = 1");
    if (knorm >= m) return 0.0;
    double bm = std::pow(static_cast<double>(b), m);
    double bk = std::pow(static_cast<double>(b), knorm);
    return (bm - bk) / (bm - 1.0);
}

namespace {

void enumerate_rec(int s, int d, int w, int L, int pos, int sum, int nonzero, int first, int last,
                   std::vector<int>& cur, std::vector<KVector>& out) {
    if (pos == s) {
        if (nonzero >= 2 && sum >= 2 && (last - first) <= w) out.push_back(KVector{cur});
        return;
    }
    const int remaining = L - sum;
    for (int v = 0; v <= remaining; ++v) {
        if (v > 0) {
            if (nonzero == d) break;                     // would exceed the component cap
            if (first >= 0 && pos - first > w) break;    // outside the index window
        }
        cur[static_cast<std::size_t>(pos)] = v;
        enumerate_rec(s, d, w, L, pos + 1, sum + v, nonzero + (v > 0 ? 1 : 0),
                      v > 0 && first < 0 ? pos : first, v > 0 ? pos : last, cur, out);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

std::vector<KVector> enumerate_k_family(int s, int d, int w, int L) {
    if (d < 2 || d > s) throw std::domain_error("enumerate_k_family: need 2 <= d <= s");
    if (w < 1) throw std::domain_error("enumerate_k_family: need w >= 1");
    if (L < 2) throw std::domain_error("enumerate_k_family: need L >= 2");
    std::vector<KVector> out;
    std::vector<int> cur(static_cast<std::size_t>(s), 0);
    enumerate_rec(s, d, w, L, 0, 0, 0, -1, -1, cur, out);
    return out;
}

CriterionReport criterion(const PointSet& p, std::span<const std::uint32_t> crit_bases, int d,
                          int w, int L, int threads) {
    CritView view(p, crit_bases);
    CriterionReport rep;
    rep.bases.assign(crit_bases.begin(), crit_bases.end());
    rep.d = d;
    rep.w = w;
    rep.L = L;
    rep.ks = enumerate_k_family(p.s, d, w, L);
    rep.values.assign(rep.ks.size(), 0.0);

    const std::size_t nk = rep.ks.size();
    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(nk)));
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) rep.values[i] = c_value(view, rep.ks[i]);
    };
    if (nthreads == 1) {
        worker(0, nk);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (nk + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            if (lo >= nk) break;
            pool.emplace_back(worker, lo, std::min(nk, lo + chunk));
        }
        for (auto& th : pool) th.join();
    }

    // fixed-order compensated reduction so the report does not depend on
    // the thread count
    double sum = 0.0, comp = 0.0;
    double best = -1.0;
    std::size_t besti = 0;
    for (std::size_t i = 0; i < nk; ++i) {
        const double y = rep.values[i] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (rep.values[i] > best) {
            best = rep.values[i];
            besti = i;
        }
    }
    rep.c_max = nk > 0 ? best : 0.0;
    rep.c_mean = nk > 0 ? sum / static_cast<double>(nk) : 0.0;
    if (nk > 0) rep.argmax = rep.ks[besti];
    return rep;
}

CriterionReport criterion(const PointSet& p, std::uint32_t crit_base, int d, int w, int L,
                          int threads) {
    std::vector<std::uint32_t> bases(static_cast<std::size_t>(p.s), crit_base);
    return criterion(p, bases, d, w, L, threads);
}

namespace {

void cqe_rec(const CritView& view, int pos, double log2prod, double budget,
             std::vector<int>& cur, bool nonzero_seen, double tol, CqeReport& rep) {
    if (pos == view.s()) {
        if (!nonzero_seen) return;
        KVector k{cur};
        const double c = c_value(view, k);
        ++rep.checked;
        if (c > 1.0 + tol) rep.violations.emplace_back(std::move(k), c);
        return;
    }
    const double lb = std::log2(static_cast<double>(view.base(pos)));
    for (int v = 0;; ++v) {
        if (v > view.kdigits(pos)) break;
        const double lp = log2prod + v * lb;
        if (lp > budget + 1e-9) break;
        cur[static_cast<std::size_t>(pos)] = v;
        cqe_rec(view, pos + 1, lp, budget, cur, nonzero_seen || v > 0, tol, rep);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

CqeReport cqe_check(const PointSet& p, std::span<const std::uint32_t> crit_bases,
                    int budget_log2, double tol) {
    CritView view(p, crit_bases);
    CqeReport rep;
    rep.tolerance = tol;
    std::vector<int> cur(static_cast<std::size_t>(p.s), 0);
    cqe_rec(view, 0, 0.0, static_cast<double>(budget_log2), cur, false, tol, rep);
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    rep.ok = rep.violations.empty();
    return rep;
}

CqeReport cqe_check(const PointSet& p, std::uint32_t crit_base, int budget_log2, double tol) {
    std::vector<std::uint32_t> bases(static_cast<std::size_t>(p.s), crit_base);
    return cqe_check(p, bases, budget_log2, tol);
}

}  // namespace qmc
