#include "hllab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hllab {

PVector::PVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("PVector: at least one entry required");
    for (double p : entries_) {
        if (std::isnan(p) || p <= 1.0)
            throw std::invalid_argument("PVector: every entry must lie in (1, inf]");
    }
}

double PVector::reciprocal(int k) const {
    double p = entries_[static_cast<std::size_t>(k)];
    return std::isinf(p) ? 0.0 : 1.0 / p;
}

double recip_sum(const PVector& p, int lo, int hi) {
    if (lo < 1 || hi > p.m() || lo > hi) throw std::out_of_range("recip_sum: bad index range");
    double sum = 0.0;
    for (int k = lo - 1; k < hi; ++k) sum += p.reciprocal(k);
    return sum;
}

double recip_sum(const PVector& p) { return recip_sum(p, 1, p.m()); }

Regime classify_regime(const PVector& p) {
    // thresholds are exact by design: reciprocals of the admissible inputs
    // are exact or near-exact doubles and the regimes overlap at 1/2 anyway
    double u = recip_sum(p);
    Regime r;
    r.recip_sum = u;
    if (u >= 1.0) {
        r.tag = RegimeTag::Invalid;
    } else if (u < 0.5) {
        r.tag = RegimeTag::BhRange;
    } else {
        r.tag = RegimeTag::DsRange;
        r.bh_admissible = (u == 0.5);
    }
    return r;
}

double critical_exponent(const PVector& p) {
    Regime r = classify_regime(p);
    if (r.tag == RegimeTag::Invalid)
        throw std::domain_error("critical_exponent: requires |1/p| < 1");
    if (r.tag == RegimeTag::BhRange) {
        double m = static_cast<double>(p.m());
        return 2.0 * m / (m + 1.0 - 2.0 * r.recip_sum);
    }
    return 1.0 / (1.0 - r.recip_sum);
}

namespace {

bool values_distinct(const PVector& p, const std::vector<int>& idx1) {
    for (std::size_t a = 0; a < idx1.size(); ++a)
        for (std::size_t b = a + 1; b < idx1.size(); ++b)
            if (p[idx1[a] - 1] == p[idx1[b] - 1]) return false;
    return true;
}

double subset_bound(int card, double sigma) {
    return std::exp2(static_cast<double>(card - 1) * (1.0 - sigma));
}

// preference order among minimal-cardinality subsets
bool better_subset(const QualifyingSubset& a, const QualifyingSubset& b) {
    if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
    if (a.partial_sum != b.partial_sum) return a.partial_sum > b.partial_sum;
    return a.indices < b.indices;
}

}  // namespace

SubsetReport subset_parameter_s(const PVector& p, SubsetMode mode) {
    Regime r = classify_regime(p);
    if (r.tag != RegimeTag::DsRange)
        throw std::domain_error("subset_parameter_s: requires 1/2 <= |1/p| < 1");
    int m = p.m();
    if (m > 22)
        throw std::domain_error("subset_parameter_s: exhaustive enumeration capped at m = 22");

    SubsetReport report;
    report.mode = mode;
    const QualifyingSubset* best = nullptr;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        QualifyingSubset q;
        for (int k = 0; k < m; ++k)
            if (mask & (1u << k)) {
                q.indices.push_back(k + 1);
                q.partial_sum += p.reciprocal(k);
            }
        if (q.partial_sum < 0.5 || q.partial_sum >= 1.0) continue;
        if (mode == SubsetMode::DistinctValues && !values_distinct(p, q.indices)) continue;
        q.bound = subset_bound(static_cast<int>(q.indices.size()), q.partial_sum);
        report.all_qualifying.push_back(std::move(q));
    }
    for (const auto& q : report.all_qualifying)
        if (!best || better_subset(q, *best)) best = &q;
    if (best) {
        report.s = static_cast<int>(best->indices.size());
        report.indices = best->indices;
        report.partial_sum = best->partial_sum;
    }
    return report;
}

double bound_classical(int m) {
    if (m < 2) throw std::domain_error("bound_classical: m >= 2 required");
    return std::pow(std::sqrt(2.0), m - 1);
}

double bound_universal(const PVector& p) {
    Regime r = classify_regime(p);
    if (r.tag != RegimeTag::DsRange)
        throw std::domain_error("bound_universal: requires 1/2 <= |1/p| < 1");
    return std::exp2(static_cast<double>(p.m() - 1) * (1.0 - r.recip_sum));
}

std::optional<double> bound_main(const PVector& p, SubsetMode mode) {
    SubsetReport rep = subset_parameter_s(p, mode);
    if (!rep.s) return std::nullopt;
    return subset_bound(*rep.s, rep.partial_sum);
}

BestBound bound_best(const PVector& p, SubsetMode mode, bool include_extrapolated) {
    Regime r = classify_regime(p);
    if (r.tag == RegimeTag::Invalid) throw std::domain_error("bound_best: requires |1/p| < 1");

    BestBound best;
    if (p.m() >= 2) best.candidates.emplace_back(BoundSource::Classical, bound_classical(p.m()));
    if (r.tag == RegimeTag::DsRange) {
        best.candidates.emplace_back(BoundSource::Universal, bound_universal(p));
        SubsetReport rep = subset_parameter_s(p, mode);
        if (rep.s) {
            best.candidates.emplace_back(BoundSource::MainTheorem,
                                         subset_bound(*rep.s, rep.partial_sum));
            if (include_extrapolated) {
                // the stated bound fixes s minimal; other qualifying subsets
                // are offered as extrapolations only
                for (const auto& q : rep.all_qualifying)
                    if (q.indices != rep.indices)
                        best.candidates.emplace_back(BoundSource::Extrapolated, q.bound);
            }
        }
    }
    if (best.candidates.empty())
        throw std::domain_error("bound_best: no applicable bound for this p");

    best.value = kInf;
    for (const auto& [src, v] : best.candidates) best.value = std::min(best.value, v);
    for (const auto& [src, v] : best.candidates)
        if (v <= best.value * (1.0 + 1e-12)) best.sources.push_back(src);
    std::sort(best.sources.begin(), best.sources.end());
    best.sources.erase(std::unique(best.sources.begin(), best.sources.end()), best.sources.end());
    return best;
}

double khinchine_constant(double q, Field) {
    if (!(q >= 2.0))
        throw std::domain_error("khinchine_constant: only q >= 2 supported (A_q = 1 there)");
    return 1.0;
}

std::string to_string(BoundSource src) {
    switch (src) {
        case BoundSource::MainTheorem: return "MAIN_THEOREM";
        case BoundSource::Universal: return "UNIVERSAL";
        case BoundSource::Classical: return "CLASSICAL";
        case BoundSource::Extrapolated: return "EXTRAPOLATED";
    }
    return "?";
}

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::BhRange: return "BH_RANGE";
        case RegimeTag::DsRange: return "DS_RANGE";
        case RegimeTag::Invalid: return "INVALID";
    }
    return "?";
}

std::string to_string(SubsetMode mode) {
    return mode == SubsetMode::DistinctIndices ? "DISTINCT_INDICES" : "DISTINCT_VALUES";
}

}  // namespace hllab
