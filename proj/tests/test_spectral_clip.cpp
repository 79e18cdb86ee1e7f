#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "quatspec/random.hpp"
#include "quatspec/spectral_clip.hpp"

using namespace quatspec;

namespace {

const Quaternion kOne{1, 0, 0, 0};

QTensor delta(std::size_t n) {
    QTensor k{{n}};
    k[0] = kOne;
    return k;
}

double multiset_deviation(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

// Power iteration on the complex adjoint of the materialized operator;
// independent route to the spectral norm.
double power_iteration_norm(const QTensor& op, int iters = 300) {
    const CMatrix x = to_complex_adjoint(op).matrix;
    const CMatrix xh = x.adjoint();
    CMatrix y(x.cols(), 1);
    for (std::size_t i = 0; i < x.cols(); ++i)
        y.at(i, 0) = cplx{std::cos(1.7 * double(i + 1)), std::sin(0.9 * double(i + 1))};
    double est = 0;
    for (int t = 0; t < iters; ++t) {
        CMatrix z = xh * (x * y);
        double nz = 0;
        for (std::size_t i = 0; i < z.rows(); ++i) nz += std::norm(z.at(i, 0));
        nz = std::sqrt(nz);
        if (nz == 0) return 0;
        for (std::size_t i = 0; i < z.rows(); ++i) z.at(i, 0) /= nz;
        est = nz;  // converges to sigma_max^2
        y = z;
    }
    return std::sqrt(est);
}

}  // namespace

TEST_CASE("xi pairing structure") {
    Rng rng{101};
    const Axis mu{1, 1, 1};
    {
        const auto xi = build_xi(LeftSpectrum{-mu, rng.tensor({4})}, pick_mu2(mu));
        CHECK(xi.singletons == std::vector<std::size_t>{0, 2});
        REQUIRE(xi.pairs.size() == 1);
        CHECK(xi.pairs[0] == std::pair<std::size_t, std::size_t>{1, 3});
    }
    {
        const auto xi = build_xi(LeftSpectrum{-mu, rng.tensor({5})}, pick_mu2(mu));
        CHECK(xi.singletons == std::vector<std::size_t>{0});
        CHECK(xi.pairs.size() == 2);
    }
    // singleton counts across parities, 1D and 2D
    for (std::size_t n : {3ul, 4ul, 7ul, 8ul}) {
        const auto xi = build_xi(LeftSpectrum{-mu, rng.tensor({n})}, pick_mu2(mu));
        CHECK(xi.singletons.size() == (n % 2 == 0 ? 2 : 1));
        CHECK(xi.singletons.size() + 2 * xi.pairs.size() == n);
    }
    for (auto [m, n] : {std::pair<std::size_t, std::size_t>{3, 3},
                        {3, 4},
                        {4, 3},
                        {4, 6},
                        {5, 5}}) {
        const auto xi = build_xi(LeftSpectrum{-mu, rng.tensor({m, n})}, pick_mu2(mu));
        const std::size_t expect = (m % 2 ? 1u : 2u) * (n % 2 ? 1u : 2u);
        CHECK(xi.singletons.size() == expect);
        CHECK(xi.singletons.size() <= 4);
        CHECK(xi.singletons.size() + 2 * xi.pairs.size() == m * n);
    }

    CHECK_THROWS_AS(build_xi(LeftSpectrum{-mu, rng.tensor({4})}, mu), std::domain_error);
}

TEST_CASE("xi blocks are hermitian and PSD; real kernels give diagonal xi") {
    Rng rng{102};
    const Axis mu = rng.axis();
    {
        QTensor k{{6}};
        for (auto& q : k.data()) q = Quaternion{rng.gaussian(), 0, 0, 0};
        const auto xi = build_xi(LeftSpectrum{-mu, left_spectrum(CirculantOp{k}, -mu).values},
                                 pick_mu2(mu));
        for (const auto& block : xi.blocks) CHECK(norm(block.at(0, 1)) <= tol::composed);
    }
    for (int t = 0; t < 10; ++t) {
        const QTensor k = rng.tensor({6});
        const auto xi = build_xi(LeftSpectrum{-mu, left_spectrum(CirculantOp{k}, -mu).values},
                                 pick_mu2(mu));
        for (const auto& block : xi.blocks) {
            CHECK(max_abs_diff(block, hermitian_transpose(block)) <=
                  tol::hermitian_block * (1 + max_abs(block)));
            CHECK(std::abs(block.at(0, 0).x) + std::abs(block.at(0, 0).y) == 0.0);  // real diag
            const auto eig = hermitian_eigen_2x2(block);
            CHECK(eig.lo >= -tol::composed * (1 + max_abs(block)));
        }
    }
}

TEST_CASE("xi eigenvalues equal squared singular values of the operator") {
    Rng rng{103};
    const Axis mu = rng.axis();
    const QTensor k = rng.tensor({6});
    const auto sigma = singular_values(k, mu);
    auto oracle = qsvd(CirculantOp{k}.materialize());
    CHECK(multiset_deviation(sigma, oracle) <= tol::oracle_rel * (1 + oracle.front()));
}

TEST_CASE("singular values: examples and oracle equivalence") {
    Rng rng{104};
    const Axis mu{1, 1, 1};
    {
        const auto s = singular_values(delta(6).scaled_left(Quaternion{3, 0, 0, 0}), mu);
        for (double v : s) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
    }
    {
        // spectrum of unit values inside span{1, mu}: the operator is unitary
        QTensor units{{6}};
        for (auto& q : units.data()) {
            const double a = rng.gaussian(), b = rng.gaussian();
            const double n = std::hypot(a, b);
            q = Quaternion{a / n, 0, 0, 0} + (-mu.direction()) * (b / n);
        }
        const auto kernel = kernel_from_spectrum(LeftSpectrum{-mu, units});
        for (double v : singular_values(kernel.kernel(), mu))
            CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    }
    // 1D kernels across sizes
    for (std::size_t n : {4ul, 5ul, 6ul, 8ul}) {
        for (int t = 0; t < 5; ++t) {
            const QTensor k = rng.tensor({n});
            const Axis axis = rng.axis();
            const auto fast = singular_values(k, axis);
            const auto oracle = qsvd(CirculantOp{k}.materialize());
            CHECK(multiset_deviation(fast, oracle) <= tol::oracle_rel * (1 + oracle.front()));
        }
    }
    // 2D kernels, including the vectorized 16x16 materialization
    for (auto [m, n] :
         {std::pair<std::size_t, std::size_t>{4, 4}, {3, 5}, {6, 6}, {2, 4}}) {
        const QTensor k = rng.tensor({m, n});
        const Axis axis = rng.axis();
        const auto fast = singular_values(k, axis);
        const auto oracle = qsvd(DoublyBlockCirculantOp{k}.materialize());
        CHECK(multiset_deviation(fast, oracle) <= tol::oracle_rel * (1 + oracle.front()));
    }
    // axis independence of the singular values themselves
    {
        const QTensor k = rng.tensor({6});
        const auto s1 = singular_values(k, Axis::i());
        const auto s2 = singular_values(k, rng.axis());
        CHECK(multiset_deviation(s1, s2) <= tol::oracle_rel * (1 + s1.front()));
    }
    // real positive scaling equivariance
    {
        const QTensor k = rng.tensor({5});
        const auto s1 = singular_values(k, mu);
        auto s2 = singular_values(k.scaled_left(Quaternion{2.5, 0, 0, 0}), mu);
        for (std::size_t i = 0; i < s1.size(); ++i)
            CHECK(s2[i] == doctest::Approx(2.5 * s1[i]).epsilon(1e-10));
    }
}

TEST_CASE("spectral norm bounds the operator") {
    Rng rng{105};
    const Axis mu{1, 1, 1};
    {
        const Quaternion q = rng.quaternion();
        CHECK(spectral_norm(delta(4).scaled_left(q), mu) == doctest::Approx(norm(q)).epsilon(1e-12));
    }
    const QTensor k = rng.tensor({8});
    const double sn = spectral_norm(k, mu);
    const CirculantOp op{k};
    for (int t = 0; t < 1000; ++t) {
        const QTensor x = rng.unit_vector(8);
        CHECK(frobenius_norm(op.matvec(x)) <= sn + tol::fast_path);
    }
    // the bound is tight: power iteration on the complex adjoint approaches it
    CHECK(power_iteration_norm(op.materialize()) >= 0.999 * sn);
}

TEST_CASE("clip: uniform scaling and no-op paths") {
    const Axis mu{1, 1, 1};
    {
        const QTensor out = clip(delta(6).scaled_left(Quaternion{3, 0, 0, 0}), 1.0, mu, {6});
        CHECK(max_abs_diff(out, delta(6)) <= tol::composed);
    }
    {
        Rng rng{106};
        QTensor k = rng.tensor({8});
        const double sn = spectral_norm(k, mu);
        const QTensor out = clip(k, sn * 2.0, mu, {8});
        CHECK(max_abs_diff(out, k) <= tol::composed * (1 + max_abs(k)));
    }
    CHECK_THROWS_AS(clip(delta(4), -1.0, Axis{1, 1, 1}, {4}), std::invalid_argument);
    CHECK_THROWS_AS(clip(delta(4), 1.0, Axis{1, 1, 1}, {5}), std::invalid_argument);
    CHECK_THROWS_AS(clip(delta(4), 1.0, Axis{1, 1, 1}, {2, 2}), std::invalid_argument);
}

TEST_CASE("clip: threshold contract before spatial clipping") {
    Rng rng{107};
    const Axis mu{1, 1, 1};
    ClipOptions freq_only;
    freq_only.spatial_clip = false;

    // random 9x9 kernel padded to 32x32, T = 0.8 max sigma
    QTensor k{{32, 32}};
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) k.at(i, j) = rng.quaternion();
    const double max_sigma = spectral_norm(k, mu);
    const double t = 0.8 * max_sigma;
    const QTensor out = clip(k, t, mu, {9, 9}, freq_only);
    CHECK(spectral_norm(out, mu) <= t * (1 + tol::clip_inflate));

    // deep clip on a smaller kernel: same contract plus idempotence
    const QTensor k2 = rng.tensor({8});
    const double t2 = 0.2 * spectral_norm(k2, mu);
    const QTensor once = clip(k2, t2, mu, {8}, freq_only);
    CHECK(spectral_norm(once, mu) <= t2 * (1 + tol::clip_inflate));
    const QTensor twice = clip(once, t2, mu, {8}, freq_only);
    CHECK(max_abs_diff(twice, once) <= tol::witness * (1 + max_abs(once)));

    // monotonicity
    CHECK(spectral_norm(once, mu) <= spectral_norm(k2, mu) + tol::fast_path);
}

TEST_CASE("clip: spatial step zeroes outside the support") {
    Rng rng{108};
    const Axis mu{1, 1, 1};
    QTensor k{{16, 16}};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) k.at(i, j) = rng.quaternion();
    const double t = 0.5 * spectral_norm(k, mu);
    const QTensor out = clip(k, t, mu, {5, 5});
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j)
            if (i >= 5 || j >= 5) CHECK(norm(out.at(i, j)) == 0.0);

    // Monte-Carlo contract at tolerance a = 0.1
    const auto stats = clip_violation_rate(out, t, 0.1, 500, 12345);
    CHECK(stats.violations == 0);
}

TEST_CASE("oracle clip baseline") {
    Rng rng{109};
    const Axis mu{1, 1, 1};
    {
        // identity kernel, threshold above the norm: unchanged
        const QTensor out = oracle_clip(delta(4), 2.0, mu);
        CHECK(max_abs_diff(out, delta(4)) <= tol::witness);
    }
    for (int t = 0; t < 5; ++t) {
        const QTensor k = rng.tensor({4});
        const double thr = 0.6 * spectral_norm(k, mu);

        // the oracle output hits min(sigma, T) exactly
        auto clipped_sigma = qsvd(CirculantOp{oracle_clip(k, thr, mu)}.materialize());
        auto expect = qsvd(CirculantOp{k}.materialize());
        for (auto& v : expect) v = std::min(v, thr);
        CHECK(multiset_deviation(clipped_sigma, expect) <= tol::oracle_rel * (1 + expect.front()));

        // both routes agree on the top singular value of their outputs
        ClipOptions freq_only;
        freq_only.spatial_clip = false;
        const QTensor fast_out = clip(k, thr, mu, {4}, freq_only);
        CHECK(spectral_norm(fast_out, mu) == doctest::Approx(thr).epsilon(1e-6));

        // and on the singular values of the input (the exact computation)
        CHECK(multiset_deviation(singular_values(k, mu), qsvd(CirculantOp{k}.materialize())) <=
              tol::oracle_rel * (1 + expect.front()));
    }
    {
        // 2D
        const QTensor k = rng.tensor({4, 4});
        const double thr = 0.7 * spectral_norm(k, mu);
        auto clipped_sigma = qsvd(DoublyBlockCirculantOp{oracle_clip(k, thr, mu)}.materialize());
        auto expect = qsvd(DoublyBlockCirculantOp{k}.materialize());
        for (auto& v : expect) v = std::min(v, thr);
        CHECK(multiset_deviation(clipped_sigma, expect) <= tol::oracle_rel * (1 + expect.front()));
    }
    CHECK_THROWS_AS(oracle_clip(Rng{1}.tensor({16}), 1.0, mu), std::domain_error);
}

TEST_CASE("block eigen union check") {
    Rng rng{110};
    const Axis mu = rng.axis();
    {
        // diagonal xi from a real kernel
        QTensor k{{6}};
        for (auto& q : k.data()) q = Quaternion{rng.gaussian(), 0, 0, 0};
        const auto xi = build_xi(detail::pipeline_spectrum(k, mu), pick_mu2(mu));
        CHECK(block_eigen_union_check(xi));
    }
    {
        const auto xi = build_xi(detail::pipeline_spectrum(rng.tensor({6}), mu), pick_mu2(mu));
        CHECK(block_eigen_union_check(xi));
    }
    {
        // a 2x2 block embedded in zeros: its eigenvalues appear in the qsvd
        QTensor h = QTensor::matrix(2, 2);
        h.at(0, 0) = Quaternion{2, 0, 0, 0};
        h.at(1, 1) = Quaternion{1, 0, 0, 0};
        h.at(0, 1) = rng.unit_quaternion();
        h.at(1, 0) = conj(h.at(0, 1));
        QTensor big = QTensor::matrix(4, 4);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) big.at(2 + r, 2 + c) = h.at(r, c);
        const auto eig = hermitian_eigen_2x2(h);
        const auto sigma = qsvd(big);
        const auto found = [&](double v) {
            for (double s : sigma)
                if (std::abs(s - std::abs(v)) <= tol::witness * (1 + std::abs(v))) return true;
            return false;
        };
        CHECK(found(eig.lo));
        CHECK(found(eig.hi));
    }
}

TEST_CASE("tiny sizes: N = 1 and N = 2") {
    Rng rng{112};
    const Axis mu = rng.axis();
    {
        const QTensor k = rng.tensor({1});
        const auto s = singular_values(k, mu);
        REQUIRE(s.size() == 1);
        CHECK(s[0] == doctest::Approx(norm(k[0])).epsilon(1e-12));
    }
    for (std::size_t n : {2ul, 3ul}) {
        const QTensor k = rng.tensor({n});
        CHECK(multiset_deviation(singular_values(k, mu), qsvd(CirculantOp{k}.materialize())) <=
              tol::oracle_rel * (1 + max_abs(k) * double(n)));
    }
    {
        const QTensor k = rng.tensor({2, 2});
        CHECK(multiset_deviation(singular_values(k, mu),
                                 qsvd(DoublyBlockCirculantOp{k}.materialize())) <=
              tol::oracle_rel * (1 + max_abs(k) * 4));
    }
    {
        // clipping a 1-point kernel is plain magnitude clamping
        QTensor k{{1}};
        k[0] = Quaternion{3, 4, 0, 0};  // |k| = 5
        const QTensor out = clip(k, 2.0, mu, {1});
        CHECK(norm(out[0]) == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("clip violation statistics are deterministic under seed") {
    Rng rng{111};
    QTensor k{{8, 8}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) k.at(i, j) = rng.quaternion();
    const auto a = clip_violation_rate(k, 1.0, 0.1, 64, 777);
    const auto b = clip_violation_rate(k, 1.0, 0.1, 64, 777);
    CHECK(a.violations == b.violations);
    CHECK(a.max_ratio == doctest::Approx(b.max_ratio).epsilon(1e-15));
}
