#pragma once

// Desk-scale invariant sweep across every module; the CLI selftest command
// prints one line per check.  Budgeted to finish well inside a minute.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "quatspec/circulant.hpp"
#include "quatspec/kernels.hpp"
#include "quatspec/linalg.hpp"
#include "quatspec/qft.hpp"
#include "quatspec/random.hpp"
#include "quatspec/spectral_clip.hpp"
#include "quatspec/tensor_io.hpp"

namespace quatspec {

struct SelfTestResult {
    std::string name;
    bool pass{false};
    double worst{0};   // worst deviation observed
    double budget{0};  // tolerance it was held against
};

namespace detail {

inline void record(std::vector<SelfTestResult>& out, const std::string& name, double worst,
                   double budget) {
    out.push_back({name, worst <= budget, worst, budget});
}

}  // namespace detail

inline std::vector<SelfTestResult> run_selftest() {
    std::vector<SelfTestResult> results;
    Rng rng{20240917};

    {  // quaternion algebra round trips
        double worst = 0;
        for (int t = 0; t < 200; ++t) {
            const Quaternion q = rng.quaternion();
            if (norm(q) < 1e-9) continue;
            const auto p = polar(q);
            worst = std::max(worst,
                             norm(qexp(p.axis.direction() * p.angle) * p.magnitude - q) /
                                 (1 + norm(q)));
        }
        detail::record(results, "quat polar round trip", worst, tol::round_trip);
    }
    {  // rotation between axes
        double worst = 0;
        for (int t = 0; t < 50; ++t) {
            const Axis mu = rng.axis(), nu = rng.axis();
            if (std::abs(dot(mu, nu)) > 1 - 1e-4) continue;
            const Quaternion p = axis_rotation_between(mu, nu);
            worst = std::max(worst, norm(rotate(p, nu.direction()) - mu.direction()));
        }
        detail::record(results, "axis rotation between", worst, tol::composed * 10);
    }
    {  // QFT unitarity
        double worst = 0;
        for (std::size_t n : {2ul, 3ul, 4ul, 8ul, 15ul, 32ul, 64ul}) {
            for (int t = 0; t < 3; ++t) {
                const QTensor q = qft_matrix(n, rng.axis()).entries;
                worst = std::max(worst, max_abs_diff(matmul(hermitian_transpose(q), q),
                                                     QTensor::identity(n)));
            }
        }
        detail::record(results, "qft unitarity", worst, tol::unitary);
    }
    {  // DFT specialization at axis i on complex input
        const std::size_t n = 8;
        QTensor x{{n}};
        std::vector<std::complex<double>> xc(n);
        for (std::size_t k = 0; k < n; ++k) {
            xc[k] = {rng.gaussian(), rng.gaussian()};
            x[k] = Quaternion{xc[k].real(), xc[k].imag(), 0, 0};
        }
        const QTensor f = transform(x, make_plan(n, Axis::i()));
        double worst = 0;
        const double pi = std::acos(-1.0);
        for (std::size_t u = 0; u < n; ++u) {
            std::complex<double> acc{};
            for (std::size_t t = 0; t < n; ++t)
                acc += xc[t] * std::exp(std::complex<double>{
                                  0, -2.0 * pi * double(t * u % n) / double(n)});
            acc /= std::sqrt(double(n));
            worst = std::max(worst, norm(f[u] - Quaternion{acc.real(), acc.imag(), 0, 0}));
        }
        detail::record(results, "dft specialization (axis i)", worst, tol::round_trip);
    }
    {  // fast transform vs direct evaluation
        double worst = 0;
        for (std::size_t n : {4ul, 7ul, 16ul, 36ul}) {
            const QTensor x = rng.tensor({n});
            for (Side side : {Side::Left, Side::Right}) {
                const QftPlan plan{{n}, rng.axis(), side, Direction::Forward,
                                   Normalization::Symmetric};
                worst = std::max(worst, max_abs_diff(fast_transform(x, plan), transform(x, plan)) /
                                            (1 + max_abs(x)));
            }
        }
        detail::record(results, "fast qft vs direct", worst, tol::fast_path);
    }
    {  // self-product permutation
        const std::size_t n = 16;
        const auto q = qft_matrix(n, rng.axis());
        const auto perm = qft_self_product(n);
        QTensor p = QTensor::matrix(n, n);
        for (std::size_t c = 0; c < n; ++c) p.at(perm[c], c) = Quaternion{1, 0, 0, 0};
        detail::record(results, "qft self product", max_abs_diff(matmul(q.entries, q.entries), p),
                       tol::unitary);
    }
    {  // circulant eigen-residuals
        double worst = 0;
        for (int t = 0; t < 10; ++t) {
            const CirculantOp c{rng.tensor({6})};
            const Axis axis = rng.axis();
            worst = std::max(worst, eigen_residual_max(c, left_spectrum(c, axis)) /
                                        (1 + frobenius_norm(c.kernel())));
        }
        detail::record(results, "circulant eigen residual", worst, tol::composed);
    }
    {  // spectrum <-> kernel bijection
        double worst = 0;
        for (int t = 0; t < 20; ++t) {
            const QTensor k = rng.tensor({8});
            const Axis axis = rng.axis();
            const auto back = kernel_from_spectrum(left_spectrum(CirculantOp{k}, axis));
            worst = std::max(worst, max_abs_diff(back.kernel(), k) / (1 + max_abs(k)));
        }
        detail::record(results, "spectrum round trip", worst, tol::round_trip);
    }
    {  // hermitian spectrum two-route agreement and flip
        const CirculantOp c{rng.tensor({6})};
        const Axis axis = rng.axis();
        const double two_route = max_abs_diff(left_spectrum_of_hermitian(c, axis).values,
                                              left_spectrum(hermitian_kernel(c), axis).values);
        detail::record(results, "hermitian spectrum routes", two_route, tol::composed);
        detail::record(results, "spectrum flip",
                       spectrum_flip_check(c, axis) ? 0.0 : 1.0, 0.5);
    }
    {  // algebra predictions
        double worst = 0;
        const Axis mu = rng.axis();
        for (std::size_t n : {4ul, 6ul}) {
            const CirculantOp l{rng.tensor({n})}, k{rng.tensor({n})};
            const double scale =
                1 + frobenius_norm(l.kernel()) * (1 + frobenius_norm(k.kernel()));
            const auto check = [&](const AlgebraPrediction& pred, const QTensor& op) {
                for (std::size_t i = 0; i < n; ++i) {
                    QTensor w{{n}};
                    for (std::size_t r = 0; r < n; ++r) w[r] = pred.eigenvectors.at(r, i);
                    worst = std::max(
                        worst, frobenius_norm(matvec(op, w) -
                                              w.scaled_left(pred.spectrum.values[i])) / scale);
                }
            };
            check(predict_sum(l, k, mu), l.materialize() + k.materialize());
            const Quaternion p = rng.quaternion();
            check(predict_scale_left(p, l, mu), l.materialize().scaled_left(p));
            check(predict_scale_right(l, p, mu), l.materialize().scaled_right(p));
            check(predict_product(l, k, mu), matmul(l.materialize(), k.materialize()));
        }
        detail::record(results, "circulant algebra", worst, tol::fast_path);
    }
    {  // convolution theorems
        double worst = 0;
        for (int t = 0; t < 5; ++t) {
            const Axis mu = rng.axis();
            Quaternion v = rng.axis().direction();
            v = v - mu.direction() * dot(v, mu.direction());
            if (norm(v) < 1e-3) continue;
            const Axis mu2{v};
            const QTensor f = rng.tensor({8}), h = rng.tensor({8});
            for (ConvTheorem variant :
                 {ConvTheorem::LL, ConvTheorem::LR, ConvTheorem::RL, ConvTheorem::RR})
                worst = std::max(worst, convolution_theorem_check(f, h, variant, mu, mu2) /
                                            (1 + max_abs(f) * max_abs(h)));
        }
        detail::record(results, "convolution theorems", worst, tol::fast_path);
    }
    {  // 2D eigen-residual
        const DoublyBlockCirculantOp d{rng.tensor({4, 5})};
        const Axis axis = rng.axis();
        detail::record(results, "2d eigen residual",
                       eigen_residual_max_2d(d, left_spectrum_2d(d, axis)) /
                           (1 + frobenius_norm(d.kernel())),
                       tol::composed);
    }
    {  // complex adjoint round trip and homomorphism
        const QTensor a = rng.tensor({3, 3}), b = rng.tensor({3, 3});
        const double rt = max_abs_diff(from_complex_adjoint(to_complex_adjoint(a)), a);
        const CMatrix lhs = to_complex_adjoint(matmul(a, b)).matrix;
        const CMatrix rhs = to_complex_adjoint(a).matrix * to_complex_adjoint(b).matrix;
        double hom = 0;
        for (std::size_t i = 0; i < lhs.rows(); ++i)
            for (std::size_t j = 0; j < lhs.cols(); ++j)
                hom = std::max(hom, std::abs(lhs.at(i, j) - rhs.at(i, j)));
        detail::record(results, "complex adjoint", std::max(rt, hom / (1 + max_abs(a) * max_abs(b))),
                       tol::round_trip);
    }
    {  // xi singular values vs brute-force qsvd
        double worst = 0;
        for (int t = 0; t < 10; ++t) {
            const QTensor k = rng.tensor({6});
            const Axis axis = rng.axis();
            auto fast = singular_values(k, axis);
            auto oracle = qsvd(CirculantOp{k}.materialize());
            std::sort(fast.begin(), fast.end());
            std::sort(oracle.begin(), oracle.end());
            for (std::size_t i = 0; i < fast.size(); ++i)
                worst = std::max(worst, std::abs(fast[i] - oracle[i]) / (1 + oracle.back()));
        }
        for (int t = 0; t < 3; ++t) {
            const QTensor k = rng.tensor({4, 4});
            const Axis axis = rng.axis();
            auto fast = singular_values(k, axis);
            auto oracle = qsvd(DoublyBlockCirculantOp{k}.materialize());
            std::sort(fast.begin(), fast.end());
            std::sort(oracle.begin(), oracle.end());
            for (std::size_t i = 0; i < fast.size(); ++i)
                worst = std::max(worst, std::abs(fast[i] - oracle[i]) / (1 + oracle.back()));
        }
        detail::record(results, "xi vs qsvd oracle", worst, tol::oracle_rel);
    }
    {  // block-diagonal union
        const Axis mu = rng.axis();
        const auto xi = build_xi(detail::pipeline_spectrum(rng.tensor({6}), mu), pick_mu2(mu));
        detail::record(results, "xi block union", block_eigen_union_check(xi) ? 0.0 : 1.0, 0.5);
    }
    {  // clip contract
        const Axis mu{1, 1, 1};
        const QTensor k = pad_kernel(pattern_kernel(5), {12, 12});
        const double sn = spectral_norm(k, mu);
        ClipOptions freq_only;
        freq_only.spatial_clip = false;

        const QTensor noop = clip(k, sn * 1.5, mu, {5, 5}, freq_only);
        const double noop_dev = max_abs_diff(noop, k) / (1 + max_abs(k));

        const double t = 0.4 * sn;
        const QTensor out = clip(k, t, mu, {5, 5}, freq_only);
        const double overshoot = std::max(0.0, spectral_norm(out, mu) / t - 1.0);
        const QTensor again = clip(out, t, mu, {5, 5}, freq_only);
        const double idem = max_abs_diff(again, out) / (1 + max_abs(out));

        detail::record(results, "clip no-op", noop_dev, tol::composed);
        detail::record(results, "clip threshold", overshoot, tol::clip_inflate);
        detail::record(results, "clip idempotence", idem, tol::witness);

        const QTensor spatial = clip(k, t, mu, {5, 5});
        const auto stats = clip_violation_rate(spatial, t, 0.1, 200, 7);
        detail::record(results, "clip monte carlo",
                       static_cast<double>(stats.violations) / double(stats.samples), 1e-3);
    }
    {  // tensor file round trip
        QTensorFile file{rng.tensor({3, 4}), std::vector<std::size_t>{2, 2}};
        const QTensorFile back = parse_qtensor(serialize_qtensor(file));
        double worst = max_abs_diff(back.tensor, file.tensor);
        if (!back.support || *back.support != *file.support) worst = 1.0;
        detail::record(results, "tensor file round trip", worst, 0.0);
    }

    return results;
}

inline std::string selftest_report(const std::vector<SelfTestResult>& results) {
    std::ostringstream out;
    std::size_t failed = 0;
    for (const auto& r : results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (worst " << r.worst << ", budget "
            << r.budget << ")\n";
        if (!r.pass) ++failed;
    }
    out << (failed == 0 ? "all checks passed" : "FAILURES: " + std::to_string(failed)) << " ("
        << results.size() << " checks)\n";
    return out.str();
}

inline bool selftest_passed(const std::vector<SelfTestResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace quatspec
