#pragma once

// Exact singular values and spectral-norm clipping for quaternionic
// convolutions.  ||Bx||^2 reduces to a block-diagonal Hermitian quadratic
// form Xi built from the left eigenvalues taken at axis -mu: indices pair
// up as n <-> [N-n]_N (per dimension in 2D), giving 1x1 and 2x2 Hermitian
// blocks whose eigenvalues are the squared singular values of B.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "quatspec/circulant.hpp"
#include "quatspec/linalg.hpp"
#include "quatspec/parallel.hpp"
#include "quatspec/qft.hpp"
#include "quatspec/random.hpp"
#include "quatspec/tensor.hpp"
#include "quatspec/tolerances.hpp"

namespace quatspec {

struct XiBlocks {
    Axis axis;  // axis of the spectrum the blocks were built from
    Axis mu2;
    std::vector<std::size_t> shape;  // {N} or {M, N}
    std::vector<std::size_t> singletons;
    std::vector<double> singleton_values;  // |lambda_n|^2
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // flat (n, m), n < m
    std::vector<QTensor> blocks;                             // 2x2 Hermitian per pair
};

namespace detail {

// Flat partner index under n -> [N-n]_N (per dimension for grids).
inline std::size_t pairing_partner(const std::vector<std::size_t>& shape, std::size_t flat) {
    if (shape.size() == 1) return (shape[0] - flat) % shape[0];
    const std::size_t n = shape[1];
    const std::size_t u = flat / n, v = flat % n;
    return ((shape[0] - u) % shape[0]) * n + (n - v) % n;
}

}  // namespace detail

// Off-diagonals follow conj(lambda_n)^par lambda_m^perp +
// conj(lambda_n)^perp lambda_m^par; diagonals are the squared magnitudes.
inline XiBlocks build_xi(const LeftSpectrum& spectrum, const Axis& mu2) {
    if (std::abs(dot(spectrum.axis, mu2)) > tol::axis_orthogonal)
        throw std::domain_error("build_xi: mu2 must be orthogonal to the spectrum axis");

    const QTensor& lam = spectrum.values;
    XiBlocks xi{spectrum.axis, mu2, lam.shape(), {}, {}, {}, {}};

    const auto cross = [&](const Quaternion& a, const Quaternion& b) {
        const auto ca = symplectic_split(conj(a), spectrum.axis, mu2);
        const auto sb = symplectic_split(b, spectrum.axis, mu2);
        return ca.parallel * sb.perp + ca.perp * sb.parallel;
    };

    std::vector<bool> seen(lam.size(), false);
    for (std::size_t n = 0; n < lam.size(); ++n) {
        if (seen[n]) continue;
        const std::size_t m = detail::pairing_partner(lam.shape(), n);
        seen[n] = true;
        if (m == n) {
            xi.singletons.push_back(n);
            xi.singleton_values.push_back(norm_sq(lam[n]));
            continue;
        }
        seen[m] = true;
        QTensor block = QTensor::matrix(2, 2);
        block.at(0, 0) = Quaternion{norm_sq(lam[n]), 0, 0, 0};
        block.at(1, 1) = Quaternion{norm_sq(lam[m]), 0, 0, 0};
        block.at(0, 1) = cross(lam[n], lam[m]);
        block.at(1, 0) = cross(lam[m], lam[n]);
        if (norm(block.at(1, 0) - conj(block.at(0, 1))) >
            tol::hermitian_block * (1.0 + max_abs(block)))
            throw std::runtime_error("build_xi: block lost Hermitian symmetry");
        xi.pairs.emplace_back(n, m);
        xi.blocks.push_back(std::move(block));
    }
    return xi;
}

namespace detail {

inline LeftSpectrum pipeline_spectrum(const QTensor& kernel, const Axis& axis) {
    // user-facing axis mu; eigenvalues are taken w.r.t. -mu
    return {-axis, right_qft_asym(kernel, -axis, Direction::Forward)};
}

inline QTensor pipeline_kernel(const LeftSpectrum& spectrum) {
    return right_qft_asym(spectrum.values, spectrum.axis, Direction::Inverse);
}

}  // namespace detail

// Exact singular values of the (doubly-block) circulant operator the
// kernel generates, descending; never materializes the operator.
inline std::vector<double> singular_values(const QTensor& kernel, const Axis& axis) {
    const XiBlocks xi = build_xi(detail::pipeline_spectrum(kernel, axis), pick_mu2(axis));
    std::vector<double> out;
    out.reserve(kernel.size());
    for (double v : xi.singleton_values) out.push_back(std::sqrt(std::max(v, 0.0)));
    for (const QTensor& block : xi.blocks) {
        const auto eig = hermitian_eigen_2x2(block);
        out.push_back(std::sqrt(std::max(eig.lo, 0.0)));
        out.push_back(std::sqrt(std::max(eig.hi, 0.0)));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline double spectral_norm(const QTensor& kernel, const Axis& axis) {
    const auto sigma = singular_values(kernel, axis);
    return sigma.empty() ? 0.0 : sigma.front();
}

struct ClipOptions {
    bool spatial_clip = true;        // zero outside the original support
    std::size_t projection_rounds = 1;  // extra frequency/spatial alternations
};

namespace detail {

struct BlockFactors {
    double f0, f1;
};

// Per-block clipping of Xi^{1/2}: clamp the block's singular values to the
// threshold, rebuild the clipped diagonal, and derive the real weighting
// factor for each eigenvalue.  The final rescale enforces the threshold on
// the reweighted block exactly; magnitude weighting alone can overshoot
// when a clipped block carries a large off-diagonal.
inline BlockFactors clip_block(const QTensor& block, double threshold) {
    const auto eig = hermitian_eigen_2x2(block);
    const double c_lo = std::min(std::sqrt(std::max(eig.lo, 0.0)), threshold);
    const double c_hi = std::min(std::sqrt(std::max(eig.hi, 0.0)), threshold);
    const double e_lo = c_lo * c_lo, e_hi = c_hi * c_hi;

    const double d0 = norm_sq(eig.vectors.at(0, 0)) * e_lo + norm_sq(eig.vectors.at(0, 1)) * e_hi;
    const double d1 = norm_sq(eig.vectors.at(1, 0)) * e_lo + norm_sq(eig.vectors.at(1, 1)) * e_hi;
    const double p = block.at(0, 0).w, q = block.at(1, 1).w;

    BlockFactors f{p > tol::singular * tol::singular ? std::sqrt(std::max(d0, 0.0) / p) : 0.0,
                   q > tol::singular * tol::singular ? std::sqrt(std::max(d1, 0.0) / q) : 0.0};

    const double a = f.f0 * f.f0 * p, b = f.f1 * f.f1 * q;
    const double off = f.f0 * f.f1 * norm(block.at(0, 1));
    const double top = 0.5 * (a + b) + std::sqrt(0.25 * (a - b) * (a - b) + off * off);
    if (top > threshold * threshold && top > 0.0) {
        const double s = threshold / std::sqrt(top);
        f.f0 *= s;
        f.f1 *= s;
    }
    return f;
}

}  // namespace detail

// The six-step clipping pipeline: spectrum at -mu, Xi blocks, per-block
// singular-value clipping of Xi^{1/2}, real-factor reweighting of the
// eigenvalues, inverse right QFT, then spatial-support zeroing.
inline QTensor clip(const QTensor& kernel, double threshold, const Axis& axis,
                    const std::vector<std::size_t>& support, const ClipOptions& options = {}) {
    if (threshold <= 0.0) throw std::invalid_argument("clip: threshold must be positive");
    if (support.size() != kernel.rank())
        throw std::invalid_argument("clip: support rank must match the kernel");
    for (std::size_t d = 0; d < support.size(); ++d)
        if (support[d] == 0 || support[d] > kernel.shape()[d])
            throw std::invalid_argument("clip: support exceeds the padded size");

    const Axis mu2 = pick_mu2(axis);
    QTensor current = kernel;
    for (std::size_t round = 0; round < std::max<std::size_t>(options.projection_rounds, 1);
         ++round) {
        LeftSpectrum spectrum = detail::pipeline_spectrum(current, axis);
        const XiBlocks xi = build_xi(spectrum, mu2);

        std::vector<double> factor(spectrum.values.size(), 1.0);
        for (std::size_t s = 0; s < xi.singletons.size(); ++s) {
            const double mag = std::sqrt(std::max(xi.singleton_values[s], 0.0));
            factor[xi.singletons[s]] = mag > tol::singular ? std::min(mag, threshold) / mag : 0.0;
        }
        for (std::size_t b = 0; b < xi.pairs.size(); ++b) {
            const auto f = detail::clip_block(xi.blocks[b], threshold);
            factor[xi.pairs[b].first] = f.f0;
            factor[xi.pairs[b].second] = f.f1;
        }

        for (std::size_t k = 0; k < spectrum.values.size(); ++k)
            spectrum.values[k] = spectrum.values[k] * factor[k];
        current = detail::pipeline_kernel(spectrum);

        if (options.spatial_clip) {
            if (current.is_vector()) {
                for (std::size_t i = support[0]; i < current.size(); ++i) current[i] = Quaternion{};
            } else {
                for (std::size_t i = 0; i < current.rows(); ++i)
                    for (std::size_t j = 0; j < current.cols(); ++j)
                        if (i >= support[0] || j >= support[1]) current.at(i, j) = Quaternion{};
            }
        }
    }
    return current;
}

// Baseline: materialize the operator, run the brute-force QSVD through the
// complex adjoint, clamp the singular values, rebuild the matrix and read
// the kernel back off the first column.  Desk-scale sizes only.
inline QTensor oracle_clip(const QTensor& kernel, double threshold, const Axis& /*axis*/) {
    if (threshold <= 0.0) throw std::invalid_argument("oracle_clip: threshold must be positive");
    for (std::size_t d : kernel.shape())
        if (d > 8) throw std::domain_error("oracle_clip: padded size exceeds the N <= 8 guard");

    QTensor op = kernel.is_vector() ? CirculantOp{kernel}.materialize()
                                    : DoublyBlockCirculantOp{kernel}.materialize();
    const auto adj = to_complex_adjoint(op);
    auto svd = jacobi_svd(adj.matrix);

    const double tiny = tol::singular * (1.0 + (svd.sigma.empty() ? 0.0 : svd.sigma.front()));
    for (std::size_t k = 0; k < svd.sigma.size(); ++k) {
        const double scale =
            svd.sigma[k] > tiny ? std::min(svd.sigma[k], threshold) / svd.sigma[k] : 0.0;
        for (std::size_t i = 0; i < svd.av.rows(); ++i) svd.av.at(i, k) *= scale;
    }
    const CMatrix clipped = svd.av * svd.v.adjoint();
    const QTensor back = from_complex_adjoint({clipped, op.rows(), op.cols()});

    QTensor out{kernel.shape()};
    if (kernel.is_vector()) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = back.at(i, 0);
    } else {
        const std::size_t m = kernel.rows();
        for (std::size_t i = 0; i < kernel.rows(); ++i)
            for (std::size_t j = 0; j < kernel.cols(); ++j)
                out.at(i, j) = back.at(vec_index(i, j, m), 0);
    }
    return out;
}

// qsvd of the assembled block-diagonal matrix must equal the union of the
// per-block eigenvalue magnitudes.
inline bool block_eigen_union_check(const XiBlocks& xi, double tolerance = tol::witness) {
    std::size_t total = 1;
    for (std::size_t d : xi.shape) total *= d;

    QTensor assembled = QTensor::matrix(total, total);
    std::vector<double> expected;
    std::size_t pos = 0;
    for (double v : xi.singleton_values) {
        assembled.at(pos, pos) = Quaternion{v, 0, 0, 0};
        expected.push_back(std::abs(v));
        ++pos;
    }
    for (const QTensor& block : xi.blocks) {
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) assembled.at(pos + r, pos + c) = block.at(r, c);
        const auto eig = hermitian_eigen_2x2(block);
        expected.push_back(std::abs(eig.lo));
        expected.push_back(std::abs(eig.hi));
        pos += 2;
    }

    auto sigma = qsvd(assembled);
    std::sort(expected.begin(), expected.end(), std::greater<>());
    const double scale = 1.0 + (expected.empty() ? 0.0 : expected.front());
    for (std::size_t k = 0; k < sigma.size(); ++k)
        if (std::abs(sigma[k] - expected[k]) > tolerance * scale) return false;
    return true;
}

struct ViolationStats {
    std::size_t samples{0};
    std::size_t violations{0};
    double max_ratio{0};  // max ||Bx|| / threshold observed
};

// Seeded Monte-Carlo check of ||Bx|| <= (1+a) T over random unit vectors.
inline ViolationStats clip_violation_rate(const QTensor& kernel, double threshold,
                                          double tolerance_a, std::size_t samples,
                                          std::uint64_t seed) {
    ViolationStats stats{samples, 0, 0};
    std::vector<double> ratios(samples);
    parallel_for(samples, [&](std::size_t k) {
        Rng rng{substream(seed, k)};
        if (kernel.is_vector()) {
            const CirculantOp op{kernel};
            QTensor x = rng.unit_vector(kernel.size());
            ratios[k] = frobenius_norm(op.matvec(x)) / threshold;
        } else {
            const DoublyBlockCirculantOp op{kernel};
            QTensor flat = rng.unit_vector(kernel.size());
            const QTensor x{kernel.shape(), flat.data()};
            ratios[k] = frobenius_norm(op.matvec(x)) / threshold;
        }
    });
    for (double r : ratios) {
        stats.max_ratio = std::max(stats.max_ratio, r);
        if (r > 1.0 + tolerance_a) ++stats.violations;
    }
    return stats;
}

}  // namespace quatspec
