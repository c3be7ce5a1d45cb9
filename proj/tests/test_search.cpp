#include <doctest.h>

#include <cmath>

#include "hllab/rng.hpp"
#include "hllab/search.hpp"
#include "hllab/verify.hpp"
#include "oracles.hpp"

using namespace hllab;
using hllab::testing::fd_grad;
using hllab::testing::rel_tensor_dist;

namespace {

CoeffTensor littlewood() { return CoeffTensor::from_real({2, 2}, {1, 1, 1, -1}); }

}  // namespace

TEST_CASE("ratio worked cases") {
    CHECK(ratio(littlewood(), PVector({kInf, kInf})) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    CoeffTensor e11 = CoeffTensor::from_real({2, 2}, {1, 0, 0, 0});
    CHECK(ratio(e11, PVector({3, 3})) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(ratio(CoeffTensor({2, 2}, Field::Real), PVector({kInf, kInf})),
                    std::invalid_argument);
}

TEST_CASE("grad_lhs closed forms") {
    CoeffTensor a = CoeffTensor::from_real({2}, {1, 0});
    CoeffTensor g = grad_lhs(a, 2.0);
    CHECK(g.coeff(0) == Scalar{1.0});
    CHECK(g.coeff(1) == Scalar{0.0});

    CoeffTensor b = CoeffTensor::from_real({2}, {1, 1});
    CoeffTensor gb = grad_lhs(b, 2.0);
    CHECK(gb.coeff(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(gb.coeff(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(grad_lhs(b, 1.0), std::domain_error);
    CHECK_THROWS_AS(grad_lhs(CoeffTensor({2}, Field::Real), 2.0), std::invalid_argument);
}

TEST_CASE("grad_lhs matches central finite differences") {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        CoeffTensor t = random_tensor({2, 2, 2}, Field::Real, Dist::Gaussian, 100'000 + rep);
        for (double rho : {4.0 / 3.0, 2.0, 4.0}) {
            CoeffTensor analytic = grad_lhs(t, rho);
            CoeffTensor numeric = fd_grad(t, rho, 1e-6);
            worst = std::max(worst, rel_tensor_dist(numeric, analytic));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("grad_norm_witness is the witness outer product") {
    CoeffTensor id2 = CoeffTensor::from_real({2, 2}, {1, 0, 0, 1});
    NormResult fake;
    fake.value = 1.0;
    fake.witness = {Vector{1.0, 0.0}, Vector{1.0, 0.0}};
    CoeffTensor g = grad_norm_witness(id2, fake);
    CHECK(g.coeff(0) == Scalar{1.0});
    CHECK(g.coeff(1) == Scalar{0.0});
    CHECK(g.coeff(2) == Scalar{0.0});
    CHECK(g.coeff(3) == Scalar{0.0});

    // pairing with T recovers the attained value
    CoeffTensor lw = littlewood();
    NormResult lw_norm;
    lw_norm.value = 2.0;
    lw_norm.witness = {Vector{1.0, 1.0}, Vector{1.0, -1.0}};
    CoeffTensor glw = grad_norm_witness(lw, lw_norm);
    Scalar pairing{};
    for (std::size_t i = 0; i < lw.size(); ++i) pairing += glw.coeff(i) * lw.coeff(i);
    CHECK(pairing.real() == doctest::Approx(2.0).epsilon(1e-14));

    // rank-one tensor: gradient reproduces the normalized factors
    Vector a{3.0, 4.0}, b{1.0, 2.0};
    CoeffTensor rank1 = tensor_product(CoeffTensor({2}, Field::Real, a),
                                       CoeffTensor({2}, Field::Real, b));
    PVector p({2, 2});
    NormResult oracle = sup_norm_rank_one({a, b}, p);
    CoeffTensor grad = grad_norm_witness(rank1, oracle);
    double na = std::sqrt(25.0), nb = std::sqrt(5.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(grad.coeff(static_cast<std::size_t>(i * 2 + j)).real() ==
                  doctest::Approx(a[static_cast<std::size_t>(i)].real() / na *
                                  b[static_cast<std::size_t>(j)].real() / nb)
                      .epsilon(1e-13));

    NormResult degenerate;
    degenerate.witness = {Vector{0.0, 0.0}, Vector{1.0, 0.0}};
    CHECK_THROWS_AS(grad_norm_witness(id2, degenerate), std::invalid_argument);
}

TEST_CASE("seed library contents") {
    auto seeds = seed_forms(2, 2);
    bool found_littlewood = false;
    for (const auto& [t, label] : seeds) {
        CHECK_FALSE(t.is_zero());
        if (label == SeedLabel::Littlewood) {
            found_littlewood = true;
            CHECK(ratio(t, PVector({kInf, kInf})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        }
    }
    CHECK(found_littlewood);

    // zero padding changes neither side of the ratio
    auto padded = seed_forms(2, 4);
    for (const auto& [t, label] : padded)
        if (label == SeedLabel::Littlewood) {
            CHECK(t.dims() == std::vector<int>{4, 4});
            CHECK(ratio(t, PVector({kInf, kInf})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        }

    // odd order appends the all-ones slot
    auto odd = seed_forms(3, 2);
    for (const auto& [t, label] : odd)
        if (label == SeedLabel::Littlewood) {
            CHECK(t.order() == 3);
            CHECK(lp_coeff_norm(t, 1.0) == doctest::Approx(8.0).epsilon(1e-14));
        }

    CHECK_THROWS_AS(seed_forms(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(seed_forms(2, 1), std::invalid_argument);
}

TEST_CASE("lower bound search on the bilinear sup-ball problem") {
    SearchConfig cfg;
    cfg.steps = 60;
    cfg.restarts = 2;
    cfg.norm_cfg.starts = 8;
    RatioRecord rec = lower_bound_search(PVector({kInf, kInf}), 2, cfg);
    CHECK(rec.ratio >= std::sqrt(2.0) - 1e-6);
    CHECK(rec.ratio <= std::sqrt(2.0) + 1e-6);
    CHECK(rec.norm.certified_exact);
    CHECK(lp_coeff_norm(rec.tensor, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    SearchConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(lower_bound_search(PVector({kInf, kInf}), 2, bad), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_search(PVector({2, 2}), 2, cfg), std::domain_error);
}

TEST_CASE("search never loses to its own seeds") {
    SearchConfig cfg;
    cfg.steps = 40;
    cfg.restarts = 1;
    cfg.norm_cfg.starts = 8;
    PVector p({8, 8, 2});
    double seed_best = 0.0;
    for (const auto& [t, label] : seed_forms(3, 2, 4, cfg.seed))
        seed_best = std::max(seed_best, ratio(t, p, cfg.norm_cfg));
    RatioRecord rec = lower_bound_search(p, 2, cfg);
    CHECK(rec.ratio >= seed_best - 1e-9);
}

TEST_CASE("ratio is invariant under joint mode/p permutation") {
    for (int rep = 0; rep < 10; ++rep) {
        CoeffTensor t = random_tensor({3, 4}, Field::Real, Dist::Gaussian, 120'000 + rep);
        // transpose the matrix and swap the (identical) sup-ball exponents
        std::vector<Scalar> tr(t.size());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j)
                tr[static_cast<std::size_t>(j * 3 + i)] = t.coeff(static_cast<std::size_t>(i * 4 + j));
        CoeffTensor tt({4, 3}, Field::Real, std::move(tr));
        double r1 = ratio(t, PVector({kInf, kInf}));
        double r2 = ratio(tt, PVector({kInf, kInf}));
        CHECK(r1 == doctest::Approx(r2).epsilon(1e-10));
    }
}

TEST_CASE("search stays below the universal bound at p = m + 1") {
    SearchConfig cfg;
    cfg.steps = 60;
    cfg.restarts = 2;
    cfg.norm_cfg.starts = 16;
    RatioRecord rec = lower_bound_search(PVector({3, 3}), 4, cfg);
    CHECK(rec.ratio <= std::exp2(1.0 / 3.0) + 1e-3);
    CHECK(rec.ratio >= 1.0 - 1e-9);  // the rank-one seed already realizes 1
}

TEST_CASE("file seeds join the search") {
    SearchConfig cfg;
    cfg.steps = 5;
    cfg.restarts = 1;
    cfg.norm_cfg.starts = 4;
    cfg.file_seeds.push_back(littlewood());
    RatioRecord rec = lower_bound_search(PVector({kInf, kInf}), 2, cfg);
    CHECK(rec.ratio >= std::sqrt(2.0) - 1e-9);

    // wrong shape is rejected
    cfg.file_seeds.back() = random_tensor({3, 3}, Field::Real, Dist::Signs, 1);
    CHECK_THROWS_AS(lower_bound_search(PVector({kInf, kInf}), 2, cfg), std::invalid_argument);
}
