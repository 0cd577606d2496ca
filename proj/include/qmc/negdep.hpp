#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "qmc/sequences.hpp"

// Negative-dependence quality framework: gamma, pair counts M_b(k),
// C_b(k) values, the K_{d,w,s} criterion families and c.q.e. checks.

namespace qmc {

inline constexpr int kGammaInfinity = std::numeric_limits<int>::max();

// Number of leading shared digits; kGammaInfinity when all digits agree.
int gamma_digits(std::span<const std::uint16_t> x, std::span<const std::uint16_t> y);
int gamma_digits(const DigitVector& x, const DigitVector& y);

// gamma on reals in a given base, using the floor(b^i x) formulation
// truncated at the base's digit budget.
int gamma_value(double x, double y, std::uint32_t base);

struct KVector {
    std::vector<int> k;

    int norm() const;            // l1 norm |k|
    int nonzero_count() const;
    int range() const;           // max nonzero index - min nonzero index, 0 if none

    bool operator==(const KVector&) const = default;
};

// Points of a set re-expressed in the criterion bases. Coordinates whose
// construction base matches keep their exact digits; others are re-expanded
// from their real values.
class CritView {
  public:
    CritView(const PointSet& p, std::span<const std::uint32_t> crit_bases);
    CritView(const PointSet& p, std::uint32_t crit_base);

    int n() const { return n_; }
    int s() const { return s_; }
    std::uint32_t base(int j) const { return bases_[static_cast<std::size_t>(j)]; }
    int kdigits(int j) const { return kdigits_[static_cast<std::size_t>(j)]; }

    std::span<const std::uint16_t> coord_digits(int i, int j) const {
        return {digs_[static_cast<std::size_t>(j)].data() +
                    static_cast<std::size_t>(i) * kdigits_[static_cast<std::size_t>(j)],
                static_cast<std::size_t>(kdigits_[static_cast<std::size_t>(j)])};
    }

    // Leading t digits of coordinate j of point i as an integer in [0, b^t).
    std::uint64_t prefix_key(int i, int j, int t) const;

  private:
    int n_ = 0, s_ = 0;
    std::vector<std::uint32_t> bases_;
    std::vector<int> kdigits_;
    std::vector<std::vector<std::uint16_t>> digs_;
};

// Ordered pairs of distinct points sharing >= k_j leading digits in every
// coordinate, computed by prefix-key grouping.
std::uint64_t m_count(const CritView& view, const KVector& k);

// (prod_j b_j^{k_j}) * m_count / (n(n-1)).
double c_value(const CritView& view, const KVector& k);

// C_b(k) of a (0,m,s)-net: b^|k| max(b^{m-|k|}-1, 0) / (b^m - 1).
double net_closed_form(std::uint32_t b, int m, int knorm);

// K_{d,w,s} intersected with 2 <= |k| <= L, lexicographic order.
std::vector<KVector> enumerate_k_family(int s, int d, int w, int L);

struct CriterionReport {
    std::vector<std::uint32_t> bases;
    int d = 0, w = 0, L = 0;
    std::vector<KVector> ks;
    std::vector<double> values;
    double c_max = 0.0;
    double c_mean = 0.0;
    KVector argmax;
};

// c and c-bar over K_{d,w,s}. The report is identical for any thread count.
CriterionReport criterion(const PointSet& p, std::span<const std::uint32_t> crit_bases, int d,
                          int w, int L, int threads = 1);
CriterionReport criterion(const PointSet& p, std::uint32_t crit_base, int d, int w, int L,
                          int threads = 1);

struct CqeReport {
    bool ok = true;
    double tolerance = 1e-9;
    std::size_t checked = 0;
    std::vector<std::pair<KVector, double>> violations;  // sorted by C descending
};

// Checks C(k) <= 1 + tol over every nonzero k whose partition is no finer
// than prod_j b_j^{k_j} <= 2^budget_log2 (and within the digit budget).
CqeReport cqe_check(const PointSet& p, std::span<const std::uint32_t> crit_bases,
                    int budget_log2, double tol = 1e-9);
CqeReport cqe_check(const PointSet& p, std::uint32_t crit_base, int budget_log2,
                    double tol = 1e-9);

}  // namespace qmc
