#pragma once

#include <cstdint>
#include <vector>

#include "hllab/exponents.hpp"
#include "hllab/tensor.hpp"

namespace hllab {

inline constexpr std::uint64_t kDefaultSeed = 123456789ULL;

enum class NormMethod { Alternating, VertexExact, RankOneExact };

std::string to_string(NormMethod method);

struct NormConfig {
    int starts = 16;  // random starts; one canonical start is always added
    int max_iters = 10000;
    double tol = 1e-12;
    std::uint64_t seed = kDefaultSeed;
};

// Sup-norm estimate or exact value with the attaining vectors. The value is
// a valid lower bound on the true norm by construction; certified_exact is
// set only by the oracle methods. Witnesses are phase-canonicalized so that
// evaluate(T, witness) equals value.
struct NormResult {
    double value = 0.0;
    std::vector<Vector> witness;
    NormMethod method = NormMethod::Alternating;
    int starts_used = 0;
    int iterations = 0;
    bool converged = false;
    bool certified_exact = false;
    int degenerate_restarts = 0;
};

struct LinearStep {
    Vector x;
    double value = 0.0;
    bool degenerate = false;  // c was the zero vector; x falls back to e_1
};

// argmax of |<c, x>| over the unit ball of l_p, closed form via Holder
// extremality: x_j ~ conj-phase(c_j) |c_j|^{p*-1}, value = ||c||_{p*}
LinearStep linear_step_maximizer(const Vector& c, double p);

// coefficient vector of the linear map in one slot with the other slots
// fixed: c_j = T(x_1, ..., e_j, ..., x_m)
Vector slot_contraction(const CoeffTensor& t, int slot, const std::vector<Vector>& xs);

// Cyclic best-response ascent over the slots from multiple starts: one
// canonical start at the largest-magnitude coefficient plus cfg.starts
// seeded random starts. The per-start objective is nondecreasing.
NormResult sup_norm_alternating(const CoeffTensor& t, const PVector& p, const NormConfig& cfg = {});

// Exhaustive maximum over sign-vector tuples; exact for real tensors when
// every p_k is infinite, since the maximum modulus is attained at extreme
// points of the sup-norm balls. Budget bounds prod_k 2^{n_k}.
NormResult sup_norm_vertex_exact(const CoeffTensor& t, std::uint64_t budget = 1ULL << 24);

// ||a_1 x ... x a_m|| = prod_k ||a_k||_{p_k*}, with dual-norming witnesses
NormResult sup_norm_rank_one(const std::vector<Vector>& factors, const PVector& p);

}  // namespace hllab
