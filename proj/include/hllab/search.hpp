#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hllab/norms.hpp"
#include "hllab/tensor.hpp"

namespace hllab {

enum class SeedLabel { Littlewood, RankOne, File, Random };

std::string to_string(SeedLabel label);

// Empirical lower bound on the optimal constant: the best ratio found,
// together with the tensor that realizes it (unit l_2 coefficient norm).
struct RatioRecord {
    double ratio = 0.0;
    double lhs = 0.0;
    CoeffTensor tensor{std::vector<int>{1}, Field::Real};
    NormResult norm;
    int iterations = 0;
    SeedLabel seed_label = SeedLabel::Random;
};

// hl_lhs / sup-norm estimate; throws on the zero tensor
double ratio(const CoeffTensor& t, const PVector& p, const NormConfig& cfg = {});

// gradient of (sum |a_J|^rho)^{1/rho}: S^{1/rho - 1} |a_J|^{rho-1} phase(a_J)
CoeffTensor grad_lhs(const CoeffTensor& t, double rho);

// supergradient of the sup norm at a witness: the rank-one tensor of witness
// coordinate products (conjugated in the complex field), normalized so that
// its pairing with T recovers norm.value
CoeffTensor grad_norm_witness(const CoeffTensor& t, const NormResult& norm);

// Extremal seed library: the canonical rank-one form, sign-matrix tensor
// powers padded to size (the bilinear one realizes ratio sqrt(2) on the
// sup-norm balls), and a few seeded sign tensors. Seeds whose natural size
// exceeds n^m are skipped.
std::vector<std::pair<CoeffTensor, SeedLabel>> seed_forms(int m, int n, int sign_seeds = 4,
                                                          std::uint64_t seed = kDefaultSeed);

struct SearchConfig {
    int restarts = 8;  // random restarts on top of the seed library
    int steps = 500;
    double step_size = 0.1;
    std::uint64_t seed = kDefaultSeed;
    NormConfig norm_cfg;
    std::vector<CoeffTensor> file_seeds;  // reused best tensors, label File
};

// Projected ascent on log(lhs/norm) over unit-l_2 tensors with acceptance
// by recomputed true ratio; step size halves on rejection. If the best
// certified ratio exceeds the applicable theorem bound the run aborts:
// either the oracle or the bound calculus is broken.
RatioRecord lower_bound_search(const PVector& p, int n, const SearchConfig& cfg = {});

}  // namespace hllab
