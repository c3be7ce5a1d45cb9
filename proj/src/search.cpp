#include "hllab/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hllab/rng.hpp"
#include "hllab/verify.hpp"

namespace hllab {

double ratio(const CoeffTensor& t, const PVector& p, const NormConfig& cfg) {
    if (t.is_zero()) throw std::invalid_argument("ratio: zero tensor");
    HlLhs lhs = hl_lhs(t, p);
    NormResult norm = compute_norm_auto(t, p, cfg);
    if (norm.value <= 0.0) throw std::logic_error("ratio: nonzero tensor with zero norm estimate");
    return lhs.lhs / norm.value;
}

CoeffTensor grad_lhs(const CoeffTensor& t, double rho) {
    if (!(rho > 1.0)) throw std::domain_error("grad_lhs: rho > 1 required (nonsmooth otherwise)");
    if (t.is_zero()) throw std::invalid_argument("grad_lhs: zero tensor");
    double lhs = lp_coeff_norm(t, rho);
    std::vector<Scalar> g(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        Scalar a = t.coeff(i);
        double mag = std::abs(a);
        if (mag == 0.0) continue;  // true one-sided limit for rho > 1
        g[i] = std::pow(mag / lhs, rho - 1.0) * (a / mag);
    }
    return CoeffTensor(t.dims(), t.field(), std::move(g));
}

CoeffTensor grad_norm_witness(const CoeffTensor& t, const NormResult& norm) {
    if (static_cast<int>(norm.witness.size()) != t.order())
        throw std::invalid_argument("grad_norm_witness: witness count does not match order");
    for (const Vector& x : norm.witness) {
        bool nonzero = false;
        for (const Scalar& v : x) nonzero |= (v != Scalar{});
        if (!nonzero) throw std::invalid_argument("grad_norm_witness: degenerate witness");
    }
    CoeffTensor g(std::vector<int>{}, t.field(), std::vector<Scalar>{1.0});
    for (int k = 0; k < t.order(); ++k) {
        const Vector& x = norm.witness[static_cast<std::size_t>(k)];
        std::vector<Scalar> conj(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) conj[j] = std::conj(x[j]);
        g = tensor_product(g, CoeffTensor({static_cast<int>(x.size())}, t.field(), std::move(conj)));
    }
    return g;
}

namespace {

CoeffTensor littlewood_matrix() {
    return CoeffTensor::from_real({2, 2}, {1.0, 1.0, 1.0, -1.0});
}

// embed into dims n^m with zeros outside the original block
CoeffTensor zero_pad(const CoeffTensor& t, int n) {
    std::vector<int> dims(static_cast<std::size_t>(t.order()), n);
    std::vector<Scalar> coeffs(static_cast<std::size_t>(std::pow(n, t.order())));
    std::vector<int> idx(static_cast<std::size_t>(t.order()), 0);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        std::size_t rem = flat;
        std::size_t out = 0;
        for (int k = t.order() - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] =
                static_cast<int>(rem % static_cast<std::size_t>(t.dim(k)));
            rem /= static_cast<std::size_t>(t.dim(k));
        }
        for (int k = 0; k < t.order(); ++k)
            out = out * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[static_cast<std::size_t>(k)]);
        coeffs[out] = t.coeff(flat);
    }
    return CoeffTensor(std::move(dims), t.field(), std::move(coeffs));
}

CoeffTensor normalize_l2(const CoeffTensor& t) {
    double nrm = lp_coeff_norm(t, 2.0);
    std::vector<Scalar> c(t.coeffs().begin(), t.coeffs().end());
    for (auto& v : c) v /= nrm;
    return CoeffTensor(t.dims(), t.field(), std::move(c));
}

CoeffTensor add_scaled(const CoeffTensor& a, const CoeffTensor& b, double eta) {
    std::vector<Scalar> c(a.coeffs().begin(), a.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += eta * b.coeff(i);
    Field f = a.field() == Field::Real && b.field() == Field::Real ? Field::Real : Field::Complex;
    return CoeffTensor(a.dims(), f, std::move(c));
}

}  // namespace

std::vector<std::pair<CoeffTensor, SeedLabel>> seed_forms(int m, int n, int sign_seeds,
                                                          std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("seed_forms: m >= 2 required");
    if (n < 2) throw std::invalid_argument("seed_forms: n >= 2 required");

    std::vector<std::pair<CoeffTensor, SeedLabel>> seeds;

    std::vector<int> dims(static_cast<std::size_t>(m), n);
    CoeffTensor rank_one(dims, Field::Real);
    {
        std::vector<Scalar> c(rank_one.size());
        c[0] = 1.0;
        rank_one = CoeffTensor(dims, Field::Real, std::move(c));
    }
    seeds.emplace_back(std::move(rank_one), SeedLabel::RankOne);

    // tensor powers of the 2x2 sign matrix; odd orders append an all-ones slot
    CoeffTensor block = littlewood_matrix();
    for (int k = 1; k < m / 2; ++k) block = tensor_product(block, littlewood_matrix());
    if (m % 2 == 1)
        block = tensor_product(block, CoeffTensor::from_real({2}, {1.0, 1.0}));
    seeds.emplace_back(zero_pad(block, n), SeedLabel::Littlewood);

    for (int i = 0; i < sign_seeds; ++i)
        seeds.emplace_back(
            random_tensor(dims, Field::Real, Dist::Signs, split_seed(seed, 0x5160 + static_cast<std::uint64_t>(i))),
            SeedLabel::Random);
    return seeds;
}

namespace {

RatioRecord ascend(const CoeffTensor& start, const PVector& p, const SearchConfig& cfg,
                   SeedLabel label) {
    double rho = critical_exponent(p);
    RatioRecord rec;
    rec.seed_label = label;
    rec.tensor = normalize_l2(start);
    rec.norm = compute_norm_auto(rec.tensor, p, cfg.norm_cfg);
    rec.lhs = lp_coeff_norm(rec.tensor, rho);
    rec.ratio = rec.lhs / rec.norm.value;

    double eta = cfg.step_size;
    for (int step = 0; step < cfg.steps; ++step) {
        ++rec.iterations;
        CoeffTensor g_lhs = grad_lhs(rec.tensor, rho);
        CoeffTensor g_norm = grad_norm_witness(rec.tensor, rec.norm);
        // ascent direction of log ratio: grad lhs / lhs - grad norm / norm
        std::vector<Scalar> d(g_lhs.coeffs().begin(), g_lhs.coeffs().end());
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = d[i] / rec.lhs - g_norm.coeff(i) / rec.norm.value;
        CoeffTensor dir(g_lhs.dims(), rec.tensor.field(), std::move(d));
        CoeffTensor moved = add_scaled(rec.tensor, dir, eta);
        if (moved.is_zero()) {  // step cancelled the tensor; shrink and retry
            eta *= 0.5;
            if (eta < 1e-12) break;
            continue;
        }
        CoeffTensor trial = normalize_l2(moved);
        NormResult trial_norm = compute_norm_auto(trial, p, cfg.norm_cfg);
        double trial_lhs = lp_coeff_norm(trial, rho);
        double trial_ratio = trial_lhs / trial_norm.value;
        if (trial_ratio > rec.ratio) {
            rec.tensor = std::move(trial);
            rec.norm = std::move(trial_norm);
            rec.lhs = trial_lhs;
            rec.ratio = trial_ratio;
        } else {
            eta *= 0.5;
            if (eta < 1e-12) break;
        }
    }
    return rec;
}

}  // namespace

RatioRecord lower_bound_search(const PVector& p, int n, const SearchConfig& cfg) {
    if (cfg.restarts < 1) throw std::invalid_argument("lower_bound_search: restarts >= 1 required");
    if (classify_regime(p).tag == RegimeTag::Invalid)
        throw std::domain_error("lower_bound_search: requires |1/p| < 1");
    const int m = p.m();

    std::vector<std::pair<CoeffTensor, SeedLabel>> starts = seed_forms(m, n, 4, cfg.seed);
    for (const CoeffTensor& t : cfg.file_seeds) starts.emplace_back(t, SeedLabel::File);
    std::vector<int> dims(static_cast<std::size_t>(m), n);
    for (int r = 0; r < cfg.restarts; ++r)
        starts.emplace_back(
            random_tensor(dims, Field::Real, Dist::Gaussian,
                          split_seed(cfg.seed, 0xA5CE4D + static_cast<std::uint64_t>(r))),
            SeedLabel::Random);

    bool have_best = false;
    RatioRecord best;
    for (const auto& [start, label] : starts) {
        if (start.dims() != dims)
            throw std::invalid_argument("lower_bound_search: seed tensor has wrong shape");
        RatioRecord rec = ascend(start, p, cfg, label);
        // deterministic merge: ratio first, then label order, then position
        if (!have_best || rec.ratio > best.ratio) {
            best = std::move(rec);
            have_best = true;
        }
    }

    if (best.norm.certified_exact) {
        double bound = bound_best(p).value;
        if (best.ratio > bound + 1e-6)
            throw std::logic_error(
                "lower_bound_search: certified ratio exceeds the theorem bound; "
                "norm oracle or bound calculus is inconsistent");
    }
    return best;
}

std::string to_string(SeedLabel label) {
    switch (label) {
        case SeedLabel::Littlewood: return "LITTLEWOOD";
        case SeedLabel::RankOne: return "RANK_ONE";
        case SeedLabel::File: return "FILE";
        case SeedLabel::Random: return "RANDOM";
    }
    return "?";
}

}  // namespace hllab
