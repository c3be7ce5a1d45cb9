#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hllab/norms.hpp"
#include "hllab/tensor.hpp"

namespace hllab {

enum class BoundChoice { Classical, Universal, Main, Best };
enum class Verdict { Holds, Inconclusive, CertifiedViolation };

std::string to_string(BoundChoice c);
std::string to_string(Verdict v);

// One inequality check. An alternating norm is only a lower bound, so a
// failed comparison with an uncertified norm is Inconclusive, never a
// violation; CertifiedViolation requires an exact oracle norm and would
// indicate a software bug.
struct VerificationRecord {
    double lhs = 0.0;
    double rho = 0.0;
    NormResult norm;
    std::string bound_source;
    double constant = 0.0;
    std::optional<double> ratio;  // lhs / norm, empty when norm is 0
    bool holds = false;
    Verdict verdict = Verdict::Inconclusive;
    double slack = 0.0;  // constant * norm - lhs
    bool norm_certified = false;
};

struct HlLhs {
    double lhs;
    double rho;
};

// left-hand side of the coefficient-sum inequality at the critical exponent
HlLhs hl_lhs(const CoeffTensor& t, const PVector& p);

// vertex oracle when it applies (real field, all p infinite, within
// budget), alternating ascent otherwise
NormResult compute_norm_auto(const CoeffTensor& t, const PVector& p, const NormConfig& cfg = {});

VerificationRecord verify_inequality(const CoeffTensor& t, const PVector& p, BoundChoice choice,
                                     const NormConfig& cfg = {},
                                     SubsetMode mode = SubsetMode::DistinctIndices);

// The mixed-norm step of the inductive proof: for an order-(s+1) form whose
// last mode lives on the sup-norm ball,
//   (sum_{j_1..j_s} (sum_{j_{s+1}} |a|^2)^{rho/2})^{1/rho}
//     <= 2^{(s-1)(1-sigma)} ||T||
// with sigma = |1/p|_{<=s} in [1/2, 1) and rho = 1/(1-sigma).
VerificationRecord verify_khinchine_step(const CoeffTensor& t, const PVector& p_first_s,
                                         const NormConfig& cfg = {});

struct EnsembleSpec {
    Dist dist = Dist::Gaussian;
    std::vector<int> dims;
    int count = 0;
    std::uint64_t seed = kDefaultSeed;
    Field field = Field::Real;
};

struct BatchSummary {
    int count = 0;
    int holds = 0;
    int inconclusive = 0;
    int violations = 0;
    double min_slack = 0.0;
    std::optional<double> max_ratio;
    int argmax_tensor_id = -1;  // index of the ratio maximizer
};

struct BatchResult {
    BatchSummary summary;
    std::vector<VerificationRecord> records;  // in tensor-id order
};

// Seeded ensemble sweep; item i draws its tensor from substream 0 and its
// norm starts from substream 1 of split_seed(spec.seed, i), so the run is
// deterministic for any thread count.
BatchResult batch_verify(const EnsembleSpec& spec, const PVector& p, BoundChoice choice,
                         const NormConfig& cfg = {}, int threads = 1);

}  // namespace hllab
