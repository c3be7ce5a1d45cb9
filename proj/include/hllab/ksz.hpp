#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hllab/norms.hpp"
#include "hllab/tensor.hpp"

namespace hllab {

struct GrowthRow {
    int n = 0;
    int trials = 0;
    double best_ratio = 0.0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double certified_fraction = 0.0;
};

// Best-ratio statistics of sign ensembles against n, with the fitted
// log-log slope of best_ratio: positive slope at a sub-critical exponent is
// the n-dependence the critical exponent removes.
struct GrowthTable {
    std::vector<double> p_pattern;
    double q = 0.0;
    std::vector<GrowthRow> rows;  // sorted by strictly increasing n
    double slope = 0.0;
    double slope_stderr = 0.0;
};

struct FitResult {
    double slope;
    double std_err;
};

// ordinary least squares of log(best_ratio) on log(n); stderr is 0 for an
// exact two-point fit
FitResult fit_loglog_slope(const std::vector<GrowthRow>& rows);

// For each n: `trials` sign tensors of shape n^m on the balls given by the
// p pattern; ratio is the l_q coefficient norm over the sup norm (vertex
// oracle when exact enumeration fits the budget, alternating otherwise).
// Cell (n_index, trial) uses substreams of split_seed(seed, ...), so the
// table is reproducible for any thread count.
GrowthTable growth_probe(const PVector& p_pattern, double q, const std::vector<int>& n_list,
                         int trials, std::uint64_t seed, const NormConfig& cfg = NormConfig{.starts = 8},
                         int threads = 1);

// columns: n, trials, best_ratio, mean_ratio, std_ratio, certified_fraction
void growth_table_csv(const GrowthTable& table, std::ostream& out);

}  // namespace hllab
