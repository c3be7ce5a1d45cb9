#include <doctest.h>

#include <cmath>

#include "hllab/norms.hpp"
#include "hllab/rng.hpp"
#include "hllab/tensor.hpp"
#include "oracles.hpp"

using namespace hllab;
using hllab::testing::gram_power_iteration;

namespace {

CoeffTensor littlewood() { return CoeffTensor::from_real({2, 2}, {1, 1, 1, -1}); }

Vector rv(std::initializer_list<double> vals) {
    Vector v;
    for (double x : vals) v.emplace_back(x, 0.0);
    return v;
}

// literal 16-case enumeration for a 2x2 real matrix on the sup balls
double brute_force_2x2(const CoeffTensor& t) {
    double best = 0.0;
    const double sgn[2] = {1.0, -1.0};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) {
                    Vector x = rv({sgn[a], sgn[b]});
                    Vector y = rv({sgn[c], sgn[d]});
                    best = std::max(best, std::abs(evaluate(t, std::vector<Vector>{x, y})));
                }
    return best;
}

double witness_lp_norm(const Vector& x, double p) {
    std::vector<double> mags(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::abs(x[i]);
    if (std::isinf(p)) {
        double peak = 0.0;
        for (double m : mags) peak = std::max(peak, m);
        return peak;
    }
    return scaled_lq_norm(mags, p);
}

}  // namespace

TEST_CASE("linear step maximizer closed forms") {
    LinearStep inf_step = linear_step_maximizer(rv({1, 1}), kInf);
    CHECK(inf_step.value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(inf_step.x == rv({1, 1}));

    LinearStep l2 = linear_step_maximizer(rv({3, 4}), 2.0);
    CHECK(l2.value == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(l2.x[0].real() == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(l2.x[1].real() == doctest::Approx(0.8).epsilon(1e-14));

    LinearStep l4 = linear_step_maximizer(rv({1, 1}), 4.0);
    CHECK(l4.value == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-14));
    CHECK(l4.x[0].real() == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-14));

    LinearStep degen = linear_step_maximizer(rv({0, 0}), 2.0);
    CHECK(degen.degenerate);
    CHECK(degen.value == 0.0);
    CHECK(degen.x == rv({1, 0}));
}

TEST_CASE("linear step attains the dual norm with a unit vector") {
    Rng rng(29);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 2 + static_cast<int>(rng.next_u64() % 5);
        Vector c(static_cast<std::size_t>(n));
        for (auto& v : c) v = rng.normal();
        for (double p : {1.5, 2.0, 3.0, 8.0, kInf}) {
            LinearStep step = linear_step_maximizer(c, p);
            CHECK(witness_lp_norm(step.x, p) == doctest::Approx(1.0).epsilon(1e-12));
            Scalar inner{};
            for (std::size_t j = 0; j < c.size(); ++j) inner += c[j] * step.x[j];
            CHECK(std::abs(inner) == doctest::Approx(step.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("alternating norm worked cases") {
    CoeffTensor id2 = CoeffTensor::from_real({2, 2}, {1, 0, 0, 1});
    NormResult r1 = sup_norm_alternating(id2, PVector({2, 2}));
    CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-12));

    NormResult r2 = sup_norm_alternating(littlewood(), PVector({kInf, kInf}));
    CHECK(r2.value == doctest::Approx(brute_force_2x2(littlewood())).epsilon(1e-12));
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_FALSE(r2.certified_exact);

    // rank-one via Holder equality
    CoeffTensor rank1 = tensor_product(CoeffTensor::from_real({2}, {1, 1}),
                                       CoeffTensor::from_real({2}, {1, 0}));
    NormResult r3 = sup_norm_alternating(rank1, PVector({4, kInf}));
    CHECK(r3.value == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-12));

    CHECK_THROWS_AS(sup_norm_alternating(id2, PVector({2, 2, 2})), std::invalid_argument);
    NormConfig bad;
    bad.starts = 0;
    CHECK_THROWS_AS(sup_norm_alternating(id2, PVector({2, 2}), bad), std::invalid_argument);
}

TEST_CASE("alternating on the zero tensor") {
    CoeffTensor zero({2, 3}, Field::Real);
    NormResult r = sup_norm_alternating(zero, PVector({2, kInf}));
    CHECK(r.value == 0.0);
    CHECK(r.converged);
    CHECK(r.witness.size() == 2);
}

TEST_CASE("vertex oracle worked cases") {
    NormResult lw = sup_norm_vertex_exact(littlewood());
    CHECK(lw.value == 2.0);
    CHECK(lw.certified_exact);
    CHECK(std::abs(evaluate(littlewood(), lw.witness)) == doctest::Approx(2.0).epsilon(1e-15));

    CoeffTensor diag = CoeffTensor::from_real({2, 2}, {1, 0, 0, 1});
    NormResult d = sup_norm_vertex_exact(diag);
    CHECK(d.value == 2.0);

    CoeffTensor zero({2, 2}, Field::Real);
    CHECK(sup_norm_vertex_exact(zero).value == 0.0);

    CoeffTensor big({30, 30}, Field::Real);
    CHECK_THROWS_AS(sup_norm_vertex_exact(big), std::domain_error);

    CoeffTensor cplx({2, 2}, Field::Complex);
    CHECK_THROWS_AS(sup_norm_vertex_exact(cplx), std::domain_error);
}

TEST_CASE("vertex oracle matches brute force on random 2x2 matrices") {
    for (int rep = 0; rep < 50; ++rep) {
        CoeffTensor t = random_tensor({2, 2}, Field::Real,
                                      rep % 2 ? Dist::Signs : Dist::Gaussian, 300 + rep);
        CHECK(sup_norm_vertex_exact(t).value ==
              doctest::Approx(brute_force_2x2(t)).epsilon(1e-14));
    }
}

TEST_CASE("alternating is a sound lower bound and usually finds the vertex optimum") {
    int exact_hits = 0;
    for (int rep = 0; rep < 40; ++rep) {
        CoeffTensor t = random_tensor({2, 2, 2}, Field::Real,
                                      rep % 2 ? Dist::Signs : Dist::Gaussian, 17'000 + rep);
        NormResult oracle = sup_norm_vertex_exact(t);
        NormResult alt = sup_norm_alternating(t, PVector({kInf, kInf, kInf}));
        CHECK(alt.value <= oracle.value + 1e-10);
        if (std::abs(alt.value - oracle.value) <= 1e-8 * oracle.value) ++exact_hits;
    }
    CHECK(exact_hits == 40);
}

TEST_CASE("alternating matches the Gram power iteration on bilinear l2 balls") {
    double worst = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
        int n = 2 + rep % 7;
        CoeffTensor t = random_tensor({n, n}, Field::Real, Dist::Gaussian, 23'000 + rep);
        double sigma = gram_power_iteration(t, 77 + static_cast<std::uint64_t>(rep));
        NormResult alt = sup_norm_alternating(t, PVector({2, 2}));
        worst = std::max(worst, std::abs(alt.value - sigma) / sigma);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("witnesses are feasible and attain the value") {
    Rng rng(31);
    for (int rep = 0; rep < 30; ++rep) {
        CoeffTensor t = random_tensor({3, 2, 3}, Field::Real, Dist::Gaussian, 29'000 + rep);
        std::vector<double> ps;
        for (int k = 0; k < 3; ++k) {
            const double pool[] = {1.5, 2.0, 4.0, kInf};
            ps.push_back(pool[rng.next_u64() % 4]);
        }
        PVector p(ps);
        NormResult r = sup_norm_alternating(t, p);
        REQUIRE(r.witness.size() == 3);
        for (int k = 0; k < 3; ++k) {
            double nrm = witness_lp_norm(r.witness[static_cast<std::size_t>(k)], p[k]);
            CHECK(nrm >= 1.0 - 1e-12);
            CHECK(nrm <= 1.0 + 1e-12);
        }
        Scalar attained = evaluate(t, r.witness);
        CHECK(attained.real() == doctest::Approx(r.value).epsilon(1e-10));
        CHECK(std::abs(attained.imag()) <= 1e-12 * std::max(1.0, r.value));
    }
}

TEST_CASE("complex alternating handles phases") {
    CoeffTensor t = random_tensor({3, 3}, Field::Complex, Dist::Gaussian, 555);
    NormResult r = sup_norm_alternating(t, PVector({2, 2}));
    Scalar attained = evaluate(t, r.witness);
    CHECK(attained.real() == doctest::Approx(r.value).epsilon(1e-10));
    // canonicalized witness: the attained value is real nonnegative
    CHECK(std::abs(attained.imag()) <= 1e-10 * std::max(1.0, r.value));
}

TEST_CASE("norm methods are exactly equivariant under power-of-two scaling") {
    for (int rep = 0; rep < 10; ++rep) {
        CoeffTensor t = random_tensor({2, 2, 2}, Field::Real, Dist::Gaussian, 31'000 + rep);
        for (double alpha : {2.0, 0.5, -4.0}) {
            std::vector<Scalar> scaled(t.coeffs().begin(), t.coeffs().end());
            for (auto& c : scaled) c *= alpha;
            CoeffTensor ts(t.dims(), Field::Real, std::move(scaled));

            NormResult v = sup_norm_vertex_exact(t);
            NormResult vs = sup_norm_vertex_exact(ts);
            CHECK(vs.value == std::abs(alpha) * v.value);

            PVector p({3, 2, kInf});
            NormResult a = sup_norm_alternating(t, p);
            NormResult as = sup_norm_alternating(ts, p);
            CHECK(as.value == std::abs(alpha) * a.value);
        }
    }
}

TEST_CASE("rank-one oracle") {
    NormResult r1 = sup_norm_rank_one({rv({1, 0}), rv({1, 0})}, PVector({2, 2}));
    CHECK(r1.value == 1.0);
    CHECK(r1.certified_exact);

    NormResult r2 = sup_norm_rank_one({rv({1, 1}), rv({1, 1})}, PVector({kInf, kInf}));
    CHECK(r2.value == doctest::Approx(4.0).epsilon(1e-15));
    CoeffTensor prod = tensor_product(CoeffTensor::from_real({2}, {1, 1}),
                                      CoeffTensor::from_real({2}, {1, 1}));
    CHECK(sup_norm_vertex_exact(prod).value == doctest::Approx(r2.value).epsilon(1e-15));

    NormResult r3 = sup_norm_rank_one({rv({1, 1})}, PVector({4}));
    CHECK(r3.value == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-14));

    CHECK_THROWS_AS(sup_norm_rank_one({rv({1, 1})}, PVector({2, 2})), std::invalid_argument);

    // rank-one closed form agrees with alternating on the product tensor
    Rng rng(37);
    for (int rep = 0; rep < 10; ++rep) {
        Vector a(3), b(4);
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        PVector p({3.0, 1.5});
        NormResult closed = sup_norm_rank_one({a, b}, p);
        CoeffTensor ta({3}, Field::Real, a);
        CoeffTensor tb({4}, Field::Real, b);
        NormResult iter = sup_norm_alternating(tensor_product(ta, tb), p);
        CHECK(iter.value == doctest::Approx(closed.value).epsilon(1e-10));
    }
}
