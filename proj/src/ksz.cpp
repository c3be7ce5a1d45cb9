#include "hllab/ksz.hpp"

#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>

#include "hllab/parallel.hpp"
#include "hllab/rng.hpp"
#include "hllab/verify.hpp"

namespace hllab {

FitResult fit_loglog_slope(const std::vector<GrowthRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("fit_loglog_slope: at least 2 rows required");
    const std::size_t k = rows.size();
    double sx = 0.0, sy = 0.0;
    for (const GrowthRow& r : rows) {
        if (!(r.best_ratio > 0.0)) throw std::domain_error("fit_loglog_slope: ratios must be > 0");
        sx += std::log(static_cast<double>(r.n));
        sy += std::log(r.best_ratio);
    }
    double mx = sx / static_cast<double>(k), my = sy / static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (const GrowthRow& r : rows) {
        double dx = std::log(static_cast<double>(r.n)) - mx;
        double dy = std::log(r.best_ratio) - my;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    double slope = sxy / sxx;
    double rss = 0.0;
    for (const GrowthRow& r : rows) {
        double dx = std::log(static_cast<double>(r.n)) - mx;
        double dy = std::log(r.best_ratio) - my;
        double res = dy - slope * dx;
        rss += res * res;
    }
    double stderr_ = k > 2 ? std::sqrt(rss / static_cast<double>(k - 2) / sxx) : 0.0;
    return {slope, stderr_};
}

GrowthTable growth_probe(const PVector& p_pattern, double q, const std::vector<int>& n_list,
                         int trials, std::uint64_t seed, const NormConfig& cfg, int threads) {
    if (!(q >= 1.0)) throw std::invalid_argument("growth_probe: q >= 1 required");
    if (n_list.empty()) throw std::invalid_argument("growth_probe: empty n list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("growth_probe: n list must be strictly increasing");
    if (trials < 1) throw std::invalid_argument("growth_probe: trials >= 1 required");

    GrowthTable table;
    table.p_pattern = p_pattern.entries();
    table.q = q;
    const int m = p_pattern.m();

    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        int n = n_list[ni];
        std::vector<int> dims(static_cast<std::size_t>(m), n);
        std::uint64_t row_seed = split_seed(seed, ni);

        std::vector<double> ratios(static_cast<std::size_t>(trials));
        std::vector<char> certified(static_cast<std::size_t>(trials));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
        parallel_for_index(trials, threads, [&](int trial) {
            try {
                std::uint64_t cell = split_seed(row_seed, static_cast<std::uint64_t>(trial));
                CoeffTensor t = random_tensor(dims, Field::Real, Dist::Signs, split_seed(cell, 0));
                NormConfig cell_cfg = cfg;
                cell_cfg.seed = split_seed(cell, 1);
                NormResult norm = compute_norm_auto(t, p_pattern, cell_cfg);
                ratios[static_cast<std::size_t>(trial)] = lp_coeff_norm(t, q) / norm.value;
                certified[static_cast<std::size_t>(trial)] = norm.certified_exact ? 1 : 0;
            } catch (...) {
                errors[static_cast<std::size_t>(trial)] = std::current_exception();
            }
        });
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);

        GrowthRow row;
        row.n = n;
        row.trials = trials;
        double sum = 0.0;
        int cert = 0;
        for (int i = 0; i < trials; ++i) {
            double r = ratios[static_cast<std::size_t>(i)];
            row.best_ratio = std::max(row.best_ratio, r);
            sum += r;
            cert += certified[static_cast<std::size_t>(i)];
        }
        row.mean_ratio = sum / trials;
        double ss = 0.0;
        for (int i = 0; i < trials; ++i) {
            double d = ratios[static_cast<std::size_t>(i)] - row.mean_ratio;
            ss += d * d;
        }
        row.std_ratio = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
        row.certified_fraction = static_cast<double>(cert) / trials;
        table.rows.push_back(row);
    }

    if (table.rows.size() >= 2) {
        FitResult fit = fit_loglog_slope(table.rows);
        table.slope = fit.slope;
        table.slope_stderr = fit.std_err;
    }
    return table;
}

void growth_table_csv(const GrowthTable& table, std::ostream& out) {
    out << "n,trials,best_ratio,mean_ratio,std_ratio,certified_fraction\n";
    out.precision(17);
    for (const GrowthRow& r : table.rows)
        out << r.n << ',' << r.trials << ',' << r.best_ratio << ',' << r.mean_ratio << ','
            << r.std_ratio << ',' << r.certified_fraction << '\n';
}

}  // namespace hllab
