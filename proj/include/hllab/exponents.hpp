#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace hllab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Field { Real, Complex };

// Exponent tuple p = (p_1, ..., p_m), entries in (1, inf]. Infinity is the
// IEEE value, so 1/p_k is exactly 0 for an infinite entry.
class PVector {
  public:
    explicit PVector(std::vector<double> entries);

    int m() const { return static_cast<int>(entries_.size()); }
    double operator[](int k) const { return entries_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& entries() const { return entries_; }

    double reciprocal(int k) const;

  private:
    std::vector<double> entries_;
};

enum class RegimeTag { BhRange, DsRange, Invalid };

struct Regime {
    RegimeTag tag = RegimeTag::Invalid;
    double recip_sum = 0.0;
    // set when recip_sum is exactly 1/2: classified DsRange but both
    // exponent formulas apply and agree
    bool bh_admissible = false;
};

enum class SubsetMode { DistinctIndices, DistinctValues };

struct QualifyingSubset {
    std::vector<int> indices;  // 1-based, sorted ascending
    double partial_sum = 0.0;
    double bound = 1.0;  // 2^{(|S|-1)(1 - partial_sum)}
};

struct SubsetReport {
    std::optional<int> s;      // empty iff no subset qualifies (DistinctValues only)
    std::vector<int> indices;  // 1-based indices of the chosen minimal subset
    double partial_sum = 0.0;
    SubsetMode mode = SubsetMode::DistinctIndices;
    std::vector<QualifyingSubset> all_qualifying;
};

enum class BoundSource { MainTheorem, Universal, Classical, Extrapolated };

std::string to_string(BoundSource src);
std::string to_string(RegimeTag tag);
std::string to_string(SubsetMode mode);

struct BestBound {
    double value = 0.0;
    std::vector<BoundSource> sources;                      // all within 1e-12 rel. of the min
    std::vector<std::pair<BoundSource, double>> candidates;  // everything considered
};

// Sum of reciprocals 1/p_k over k in [lo, hi], 1-based inclusive.
double recip_sum(const PVector& p, int lo, int hi);
double recip_sum(const PVector& p);

Regime classify_regime(const PVector& p);

// 2m/(m+1-2|1/p|) below |1/p| = 1/2, 1/(1-|1/p|) above; both give 2 at the
// boundary. Throws std::domain_error when |1/p| >= 1.
double critical_exponent(const PVector& p);

// Minimal cardinality s of an index subset whose reciprocal sum lies in
// [1/2, 1), by exhaustive enumeration of all 2^m - 1 nonempty subsets.
// DistinctValues additionally requires pairwise distinct p-values on the
// subset. Ties among minimal-cardinality subsets: largest partial sum first
// (smallest bound), then lexicographically smallest index list.
SubsetReport subset_parameter_s(const PVector& p, SubsetMode mode = SubsetMode::DistinctIndices);

// (sqrt 2)^{m-1}
double bound_classical(int m);

// 2^{(m-1)(1-|1/p|)}, valid for 1/2 <= |1/p| < 1
double bound_universal(const PVector& p);

// 2^{(s-1)(1-sigma_s)} with the minimal qualifying subset; empty when no
// subset qualifies (caller falls back to bound_universal)
std::optional<double> bound_main(const PVector& p, SubsetMode mode = SubsetMode::DistinctIndices);

// Smallest bound among classical (always applicable), universal and main
// (both when 1/2 <= |1/p| < 1), and per-subset values from all_qualifying.
// Subsets beyond the minimal one are labeled Extrapolated and only compete
// when include_extrapolated is set.
BestBound bound_best(const PVector& p, SubsetMode mode = SubsetMode::DistinctIndices,
                     bool include_extrapolated = false);

// Khinchine constant A_q; exactly 1 for q >= 2 in both fields. q < 2 is
// outside the supported domain.
double khinchine_constant(double q, Field field = Field::Real);

}  // namespace hllab
