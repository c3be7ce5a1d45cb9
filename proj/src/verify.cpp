#include "hllab/verify.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "hllab/parallel.hpp"
#include "hllab/rng.hpp"

namespace hllab {

namespace {

VerificationRecord make_record(double lhs, double rho, NormResult norm, double constant,
                               std::string source) {
    VerificationRecord rec;
    rec.lhs = lhs;
    rec.rho = rho;
    rec.constant = constant;
    rec.bound_source = std::move(source);
    rec.norm_certified = norm.certified_exact;
    if (norm.value > 0.0) rec.ratio = lhs / norm.value;
    rec.slack = constant * norm.value - lhs;
    double tol_abs = 1e-9 * std::max(1.0, lhs);
    rec.holds = lhs <= constant * norm.value + tol_abs;
    rec.verdict = rec.holds ? Verdict::Holds
                            : (rec.norm_certified ? Verdict::CertifiedViolation
                                                  : Verdict::Inconclusive);
    rec.norm = std::move(norm);
    return rec;
}

bool all_infinite(const PVector& p) {
    for (int k = 0; k < p.m(); ++k)
        if (!std::isinf(p[k])) return false;
    return true;
}

}  // namespace

HlLhs hl_lhs(const CoeffTensor& t, const PVector& p) {
    double rho = critical_exponent(p);
    return {lp_coeff_norm(t, rho), rho};
}

NormResult compute_norm_auto(const CoeffTensor& t, const PVector& p, const NormConfig& cfg) {
    if (t.field() == Field::Real && all_infinite(p)) {
        int total_bits = 0;
        for (int k = 0; k < t.order(); ++k) total_bits += t.dim(k);
        if (total_bits <= 24) return sup_norm_vertex_exact(t);
    }
    return sup_norm_alternating(t, p, cfg);
}

VerificationRecord verify_inequality(const CoeffTensor& t, const PVector& p, BoundChoice choice,
                                     const NormConfig& cfg, SubsetMode mode) {
    if (p.m() != t.order())
        throw std::invalid_argument("verify_inequality: p length does not match tensor order");
    HlLhs lhs = hl_lhs(t, p);

    double constant = 0.0;
    std::string source;
    switch (choice) {
        case BoundChoice::Classical:
            constant = bound_classical(p.m());
            source = to_string(BoundSource::Classical);
            break;
        case BoundChoice::Universal:
            constant = bound_universal(p);
            source = to_string(BoundSource::Universal);
            break;
        case BoundChoice::Main: {
            auto b = bound_main(p, mode);
            if (!b)
                throw std::domain_error(
                    "verify_inequality: no qualifying subset in this mode; use the universal bound");
            constant = *b;
            source = to_string(BoundSource::MainTheorem);
            break;
        }
        case BoundChoice::Best: {
            BestBound b = bound_best(p, mode);
            constant = b.value;
            source.clear();
            for (std::size_t i = 0; i < b.sources.size(); ++i) {
                if (i) source += "+";
                source += to_string(b.sources[i]);
            }
            break;
        }
    }

    NormResult norm = compute_norm_auto(t, p, cfg);
    return make_record(lhs.lhs, lhs.rho, std::move(norm), constant, std::move(source));
}

VerificationRecord verify_khinchine_step(const CoeffTensor& t, const PVector& p_first_s,
                                         const NormConfig& cfg) {
    int s = p_first_s.m();
    if (t.order() != s + 1)
        throw std::invalid_argument("verify_khinchine_step: tensor order must be s + 1");
    double sigma = recip_sum(p_first_s);
    if (!(sigma >= 0.5 && sigma < 1.0))
        throw std::domain_error("verify_khinchine_step: requires 1/2 <= |1/p|_{<=s} < 1");

    double rho = 1.0 / (1.0 - sigma);
    std::vector<double> exps(static_cast<std::size_t>(s), rho);
    exps.push_back(2.0);  // inner l_2 over the last mode, per Khinchine with A_q = 1
    double lhs = mixed_norm(t, MixedExponents(exps));

    double constant = std::exp2(static_cast<double>(s - 1) * (1.0 - sigma));

    std::vector<double> pfull = p_first_s.entries();
    pfull.push_back(kInf);
    NormResult norm = compute_norm_auto(t, PVector(pfull), cfg);
    return make_record(lhs, rho, std::move(norm), constant, "KHINCHINE_STEP");
}

BatchResult batch_verify(const EnsembleSpec& spec, const PVector& p, BoundChoice choice,
                         const NormConfig& cfg, int threads) {
    if (spec.count < 1) throw std::invalid_argument("batch_verify: count >= 1 required");
    if (static_cast<int>(spec.dims.size()) != p.m())
        throw std::invalid_argument("batch_verify: dims length does not match p");

    BatchResult out;
    out.records.resize(static_cast<std::size_t>(spec.count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(spec.count));

    parallel_for_index(spec.count, threads, [&](int i) {
        try {
            std::uint64_t item_seed = split_seed(spec.seed, static_cast<std::uint64_t>(i));
            CoeffTensor t =
                random_tensor(spec.dims, spec.field, spec.dist, split_seed(item_seed, 0));
            NormConfig item_cfg = cfg;
            item_cfg.seed = split_seed(item_seed, 1);
            out.records[static_cast<std::size_t>(i)] =
                verify_inequality(t, p, choice, item_cfg);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    BatchSummary& s = out.summary;
    s.count = spec.count;
    bool first = true;
    for (int i = 0; i < spec.count; ++i) {
        const VerificationRecord& rec = out.records[static_cast<std::size_t>(i)];
        if (rec.verdict == Verdict::Holds) ++s.holds;
        if (rec.verdict == Verdict::Inconclusive) ++s.inconclusive;
        if (rec.verdict == Verdict::CertifiedViolation) ++s.violations;
        if (first || rec.slack < s.min_slack) s.min_slack = rec.slack;
        if (rec.ratio && (!s.max_ratio || *rec.ratio > *s.max_ratio)) {
            s.max_ratio = rec.ratio;
            s.argmax_tensor_id = i;
        }
        first = false;
    }
    return out;
}

std::string to_string(BoundChoice c) {
    switch (c) {
        case BoundChoice::Classical: return "classical";
        case BoundChoice::Universal: return "universal";
        case BoundChoice::Main: return "main";
        case BoundChoice::Best: return "best";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::CertifiedViolation: return "CERTIFIED_VIOLATION";
    }
    return "?";
}

}  // namespace hllab
