#include "hllab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hllab/rng.hpp"

namespace hllab {

namespace {

Vector unit_vector(int n, int j) {
    Vector e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(j)] = 1.0;
    return e;
}

std::vector<double> magnitudes(const Vector& v) {
    std::vector<double> mags(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
    return mags;
}

double lp_vec_norm(const Vector& v, double p) {
    std::vector<double> mags = magnitudes(v);
    if (std::isinf(p)) return *std::max_element(mags.begin(), mags.end());
    return scaled_lq_norm(mags, p);
}

// conj(c/|c|), the unimodular factor turning c_j x_j into |c_j|; 1 at zero
Scalar conj_phase(const Scalar& c) {
    double a = std::abs(c);
    if (a == 0.0) return 1.0;
    return std::conj(c) / a;
}

Vector random_unit(Rng& rng, int n, double p, Field field) {
    Vector x(static_cast<std::size_t>(n));
    for (auto& v : x)
        v = field == Field::Real ? Scalar{rng.normal(), 0.0} : rng.complex_normal();
    double norm = lp_vec_norm(x, p);
    for (auto& v : x) v /= norm;
    return x;
}

}  // namespace

LinearStep linear_step_maximizer(const Vector& c, double p) {
    if (c.empty()) throw std::invalid_argument("linear_step_maximizer: empty vector");
    if (!(p > 1.0)) throw std::invalid_argument("linear_step_maximizer: p must lie in (1, inf]");

    std::vector<double> mags = magnitudes(c);
    double peak = *std::max_element(mags.begin(), mags.end());
    LinearStep step;
    if (peak == 0.0) {
        step.x = unit_vector(static_cast<int>(c.size()), 0);
        step.degenerate = true;
        return step;
    }

    step.x.resize(c.size());
    if (std::isinf(p)) {
        for (std::size_t j = 0; j < c.size(); ++j) step.x[j] = conj_phase(c[j]);
        step.value = scaled_lq_norm(mags, 1.0);
        return step;
    }

    double q = p / (p - 1.0);
    // work on 2^-e * |c| so the profile is scale-free
    int e = std::ilogb(peak);
    double s = std::ldexp(1.0, -e);
    std::vector<double> u(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        u[j] = mags[j] == 0.0 ? 0.0 : std::pow(mags[j] * s, q - 1.0);
    double denom = scaled_lq_norm(u, p);
    for (std::size_t j = 0; j < c.size(); ++j)
        step.x[j] = conj_phase(c[j]) * (u[j] / denom);
    step.value = scaled_lq_norm(mags, q);
    return step;
}

Vector slot_contraction(const CoeffTensor& t, int slot, const std::vector<Vector>& xs) {
    if (slot < 0 || slot >= t.order()) throw std::out_of_range("slot_contraction: bad slot");
    CoeffTensor cur = t;
    for (int k = t.order() - 1; k > slot; --k) cur = contract_last(cur, xs[static_cast<std::size_t>(k)]);
    for (int k = 0; k < slot; ++k) cur = contract_mode(cur, 0, xs[static_cast<std::size_t>(k)]);
    return Vector(cur.coeffs().begin(), cur.coeffs().end());
}

namespace {

struct StartOutcome {
    double value = 0.0;
    std::vector<Vector> xs;
    int cycles = 0;
    bool converged = false;
    int degenerate = 0;
};

StartOutcome run_start(const CoeffTensor& t, const PVector& p, std::vector<Vector> xs,
                       const NormConfig& cfg, Rng& rng) {
    const int m = t.order();
    StartOutcome out;
    out.xs = std::move(xs);
    double last = 0.0;
    for (int cycle = 1; cycle <= cfg.max_iters; ++cycle) {
        double prev = last;
        bool had_degenerate = false;
        for (int k = 0; k < m; ++k) {
            Vector c = slot_contraction(t, k, out.xs);
            LinearStep step = linear_step_maximizer(c, p[k]);
            if (step.degenerate) {
                // the objective is 0 here; draw a fresh slot vector and move on
                out.xs[static_cast<std::size_t>(k)] =
                    random_unit(rng, t.dim(k), p[k], t.field());
                ++out.degenerate;
                had_degenerate = true;
                last = 0.0;
                continue;
            }
            if (step.value < last - 1e-9 * std::max(1.0, last))
                throw std::logic_error("sup_norm_alternating: ascent monotonicity violated");
            out.xs[static_cast<std::size_t>(k)] = std::move(step.x);
            last = step.value;
        }
        out.cycles = cycle;
        if (out.degenerate > 16 * m) break;  // stuck on degenerate slices
        if (had_degenerate || last == 0.0) continue;
        if (std::abs(last - prev) <= cfg.tol * last) {
            out.converged = true;
            break;
        }
    }
    out.value = last;
    return out;
}

}  // namespace

NormResult sup_norm_alternating(const CoeffTensor& t, const PVector& p, const NormConfig& cfg) {
    if (p.m() != t.order())
        throw std::invalid_argument("sup_norm_alternating: p length does not match tensor order");
    if (cfg.starts < 1) throw std::invalid_argument("sup_norm_alternating: starts >= 1 required");

    const int m = t.order();
    NormResult result;
    result.method = NormMethod::Alternating;

    if (t.is_zero()) {
        result.value = 0.0;
        for (int k = 0; k < m; ++k) result.witness.push_back(unit_vector(t.dim(k), 0));
        result.converged = true;
        return result;
    }

    // canonical start: basis vectors at the largest-magnitude coefficient
    // (first in row-major order on ties)
    std::size_t arg = 0;
    double peak = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double a = std::abs(t.coeff(i));
        if (a > peak) {
            peak = a;
            arg = i;
        }
    }
    std::vector<Vector> canonical(static_cast<std::size_t>(m));
    for (int k = m - 1; k >= 0; --k) {
        canonical[static_cast<std::size_t>(k)] =
            unit_vector(t.dim(k), static_cast<int>(arg % static_cast<std::size_t>(t.dim(k))));
        arg /= static_cast<std::size_t>(t.dim(k));
    }

    bool have_best = false;
    StartOutcome best;
    for (int s = 0; s <= cfg.starts; ++s) {
        Rng rng(split_seed(cfg.seed, static_cast<std::uint64_t>(s)));
        std::vector<Vector> xs;
        if (s == 0) {
            xs = canonical;
        } else {
            for (int k = 0; k < m; ++k) xs.push_back(random_unit(rng, t.dim(k), p[k], t.field()));
        }
        StartOutcome out = run_start(t, p, std::move(xs), cfg, rng);
        result.iterations += out.cycles;
        result.degenerate_restarts += out.degenerate;
        if (!have_best || out.value > best.value) {
            best = std::move(out);
            have_best = true;
        }
    }

    result.value = best.value;
    result.witness = std::move(best.xs);
    result.converged = best.converged;
    result.starts_used = cfg.starts + 1;

    // canonicalize so evaluate(T, witness) is the nonnegative value itself
    Scalar z = evaluate(t, result.witness);
    if (std::abs(z) > 0.0) {
        Scalar ph = conj_phase(z);
        for (auto& v : result.witness[0]) v *= ph;
    }
    return result;
}

NormResult sup_norm_vertex_exact(const CoeffTensor& t, std::uint64_t budget) {
    if (t.field() != Field::Real)
        throw std::domain_error("sup_norm_vertex_exact: real field only");
    if (t.order() < 1) throw std::invalid_argument("sup_norm_vertex_exact: order >= 1 required");

    int total_bits = 0;
    for (int k = 0; k < t.order(); ++k) total_bits += t.dim(k);
    if (total_bits >= 63 || (1ULL << total_bits) > budget)
        throw std::domain_error("sup_norm_vertex_exact: enumeration budget exceeded");

    const int m = t.order();
    // enumerate signs on modes 1..m-1; slot 0 is maximized analytically,
    // which agrees with the sign-vertex maximum there
    std::size_t n0 = static_cast<std::size_t>(t.dim(0));
    std::vector<int> bit_off(static_cast<std::size_t>(m), 0);  // mode k owns bits [off, off+n_k)
    int bits = 0;
    for (int k = 1; k < m; ++k) {
        bit_off[static_cast<std::size_t>(k)] = bits;
        bits += t.dim(k);
    }

    std::vector<double> buf(t.size());
    double best_val = -1.0;
    std::uint64_t best_mask = 0;
    std::vector<double> best_c(n0);

    for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
        // fold modes m-1 .. 1 with the sign vectors encoded in mask
        for (std::size_t i = 0; i < t.size(); ++i) buf[i] = t.coeff(i).real();
        std::size_t len = t.size();
        for (int k = m - 1; k >= 1; --k) {
            std::size_t nk = static_cast<std::size_t>(t.dim(k));
            int off = bit_off[static_cast<std::size_t>(k)];
            len /= nk;
            for (std::size_t i = 0; i < len; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < nk; ++j)
                    s += (mask >> (off + static_cast<int>(j))) & 1 ? -buf[i * nk + j]
                                                                   : buf[i * nk + j];
                buf[i] = s;
            }
        }
        double v = 0.0;
        for (std::size_t j = 0; j < n0; ++j) v += std::abs(buf[j]);
        if (v > best_val) {
            best_val = v;
            best_mask = mask;
            std::copy_n(buf.begin(), n0, best_c.begin());
        }
    }

    NormResult result;
    result.method = NormMethod::VertexExact;
    result.certified_exact = true;
    result.converged = true;
    result.value = best_val;
    result.iterations = static_cast<int>(1ULL << bits);
    result.starts_used = 1;

    Vector x0(n0);
    for (std::size_t j = 0; j < n0; ++j) x0[j] = best_c[j] < 0.0 ? -1.0 : 1.0;
    result.witness.push_back(std::move(x0));
    for (int k = 1; k < m; ++k) {
        Vector xk(static_cast<std::size_t>(t.dim(k)));
        for (int j = 0; j < t.dim(k); ++j)
            xk[static_cast<std::size_t>(j)] =
                (best_mask >> (bit_off[static_cast<std::size_t>(k)] + j)) & 1 ? -1.0 : 1.0;
        result.witness.push_back(std::move(xk));
    }
    return result;
}

NormResult sup_norm_rank_one(const std::vector<Vector>& factors, const PVector& p) {
    if (static_cast<int>(factors.size()) != p.m())
        throw std::invalid_argument("sup_norm_rank_one: factor count does not match p");

    NormResult result;
    result.method = NormMethod::RankOneExact;
    result.certified_exact = true;
    result.converged = true;
    result.value = 1.0;
    for (int k = 0; k < p.m(); ++k) {
        const Vector& a = factors[static_cast<std::size_t>(k)];
        if (a.empty()) throw std::invalid_argument("sup_norm_rank_one: empty factor");
        LinearStep step = linear_step_maximizer(a, p[k]);
        result.value *= step.value;  // 0 when the factor is zero
        result.witness.push_back(std::move(step.x));
    }
    return result;
}

std::string to_string(NormMethod method) {
    switch (method) {
        case NormMethod::Alternating: return "ALTERNATING";
        case NormMethod::VertexExact: return "VERTEX_EXACT";
        case NormMethod::RankOneExact: return "RANK_ONE_EXACT";
    }
    return "?";
}

}  // namespace hllab
