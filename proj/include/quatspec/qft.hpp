#pragma once

// Quaternion Fourier transforms.  The matrix Q^mu_N holds w^{ij} with
// w = e^{-mu 2pi/N}, scaled by 1/sqrt(N).  Left/right transforms differ in
// which side of the signal the exponential multiplies; flipping the axis
// sign gives the inverse.  The fast path splits a signal over the frame
// {1, mu, mu2, mu*mu2} and runs two standard complex FFTs.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "quatspec/fft.hpp"
#include "quatspec/quaternion.hpp"
#include "quatspec/tensor.hpp"
#include "quatspec/tolerances.hpp"

namespace quatspec {

enum class Side { Left, Right };
enum class Direction { Forward, Inverse };
enum class Normalization { Symmetric, Asymmetric };

// Deterministic orthogonal companion of mu: the component of i orthogonal
// to mu, or j when mu is (anti)parallel to i.
inline Axis pick_mu2(const Axis& mu) {
    const Quaternion m = mu.direction();
    Quaternion v = Quaternion{0, 1, 0, 0} - m * m.x;
    if (norm(v) < 1e-6) v = Quaternion{0, 0, 1, 0} - m * m.y;
    return Axis{v};
}

struct QftMatrix {
    std::size_t n{0};
    Axis axis;
    QTensor entries;  // N x N, symmetric Vandermonde, unitary
};

inline QftMatrix qft_matrix(std::size_t n, const Axis& axis) {
    if (n == 0) throw std::invalid_argument("qft_matrix: n must be positive");
    const double two_pi = 2.0 * std::acos(-1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    // one twiddle per residue; exponents reduce mod N exactly
    std::vector<Quaternion> w(n);
    for (std::size_t t = 0; t < n; ++t)
        w[t] = qexp(axis.direction() * (-two_pi * static_cast<double>(t) / static_cast<double>(n))) *
               scale;

    QftMatrix q{n, axis, QTensor::matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q.entries.at(i, j) = w[(i * j) % n];
#ifdef QUATSPEC_FAULT_INJECT
    q.entries.at(0, 0) += Quaternion{1e-3, 0, 0, 0};
#endif
    return q;
}

struct QftPlan {
    std::vector<std::size_t> shape;  // {N} or {M, N}
    Axis axis;
    Side side{Side::Left};
    Direction direction{Direction::Forward};
    Normalization normalization{Normalization::Symmetric};
};

inline QftPlan make_plan(std::size_t n, const Axis& axis, Side side = Side::Left,
                         Direction dir = Direction::Forward,
                         Normalization norm = Normalization::Symmetric) {
    return {{n}, axis, side, dir, norm};
}

inline QftPlan make_plan_2d(std::size_t m, std::size_t n, const Axis& axis,
                            Side side = Side::Left, Direction dir = Direction::Forward,
                            Normalization norm = Normalization::Symmetric) {
    return {{m, n}, axis, side, dir, norm};
}

inline QftPlan inverse_plan(QftPlan plan) {
    plan.direction =
        plan.direction == Direction::Forward ? Direction::Inverse : Direction::Forward;
    return plan;
}

namespace detail {

// Per-dimension coefficient so that forward(inverse(x)) = x in either
// normalization: symmetric uses 1/sqrt(N) both ways, asymmetric uses 1
// forward and 1/N on the inverse.
inline double dim_coefficient(std::size_t n, Direction dir, Normalization norm) {
    if (norm == Normalization::Symmetric) return 1.0 / std::sqrt(static_cast<double>(n));
    return dir == Direction::Forward ? 1.0 : 1.0 / static_cast<double>(n);
}

// Direct 1D pass along one dimension of a 1D/2D tensor.  `dim` selects the
// transformed index; the other index is carried along.
inline QTensor transform_dim_direct(const QTensor& x, std::size_t dim, const Axis& axis,
                                    Side side, Direction dir, Normalization norm) {
    const bool two_d = x.is_matrix();
    const std::size_t n = x.shape()[dim];
    const std::size_t other = two_d ? x.shape()[1 - dim] : 1;
    const double two_pi = 2.0 * std::acos(-1.0);
    const double sgn = dir == Direction::Forward ? -1.0 : 1.0;
    const double coef = dim_coefficient(n, dir, norm);

    std::vector<Quaternion> w(n);
    for (std::size_t t = 0; t < n; ++t)
        w[t] = qexp(axis.direction() * (sgn * two_pi * static_cast<double>(t) / static_cast<double>(n)));

    QTensor out{x.shape()};
    for (std::size_t o = 0; o < other; ++o) {
        const auto idx = [&](std::size_t t) {
            if (!two_d) return t;
            return dim == 0 ? t * other + o : o * n + t;
        };
        for (std::size_t u = 0; u < n; ++u) {
            Quaternion acc{};
            for (std::size_t t = 0; t < n; ++t) {
                const Quaternion& tw = w[(t * u) % n];
                acc += side == Side::Left ? tw * x[idx(t)] : x[idx(t)] * tw;
            }
            out[idx(u)] = acc * coef;
        }
    }
    return out;
}

struct SplitSignal {
    std::vector<std::complex<double>> simplex;  // coordinates over {1, mu}
    std::vector<std::complex<double>> perplex;  // coordinates over {mu2, mu*mu2}
};

inline SplitSignal split_signal(const QTensor& x, const Axis& mu, const Axis& mu2) {
    const Quaternion m1 = mu.direction(), m2 = mu2.direction(), m3 = m1 * m2;
    SplitSignal s;
    s.simplex.resize(x.size());
    s.perplex.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Quaternion& q = x[i];
        s.simplex[i] = {q.w, dot(q, m1)};
        s.perplex[i] = {dot(q, m2), dot(q, m3)};
    }
    return s;
}

inline QTensor merge_signal(const SplitSignal& s, const std::vector<std::size_t>& shape,
                            const Axis& mu, const Axis& mu2, double coef) {
    const Quaternion m1 = mu.direction(), m2 = mu2.direction(), m3 = m1 * m2;
    QTensor out{shape};
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto a = s.simplex[i];
        const auto b = s.perplex[i];
        out[i] = (Quaternion{a.real(), 0, 0, 0} + m1 * a.imag() + m2 * b.real() + m3 * b.imag()) *
                 coef;
    }
    return out;
}

// FFT over one dimension of a flattened 2D array (rows x cols, row-major).
inline void fft_dim(std::vector<std::complex<double>>& data, std::size_t rows, std::size_t cols,
                    std::size_t dim, int sign) {
    if (dim == 1) {
        std::vector<std::complex<double>> buf(cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) buf[c] = data[r * cols + c];
            fft(buf, sign);
            for (std::size_t c = 0; c < cols; ++c) data[r * cols + c] = buf[c];
        }
    } else {
        std::vector<std::complex<double>> buf(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t r = 0; r < rows; ++r) buf[r] = data[r * cols + c];
            fft(buf, sign);
            for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = buf[r];
        }
    }
}

}  // namespace detail

// Reference evaluation straight from the definition; O(N^2) per dimension.
inline QTensor transform(const QTensor& x, const QftPlan& plan) {
    if (x.shape() != plan.shape) throw std::invalid_argument("transform: shape mismatch");
    if (x.is_vector())
        return detail::transform_dim_direct(x, 0, plan.axis, plan.side, plan.direction,
                                            plan.normalization);
    if (!x.is_matrix()) throw std::invalid_argument("transform: 1D or 2D shape required");
    // exponents along the two dimensions share the axis, so they commute and
    // the 2D transform is two sequential 1D passes
    QTensor tmp = detail::transform_dim_direct(x, 0, plan.axis, plan.side, plan.direction,
                                               plan.normalization);
    return detail::transform_dim_direct(tmp, 1, plan.axis, plan.side, plan.direction,
                                        plan.normalization);
}

// Same contract as transform(); O(N log N) via two complex FFTs.  The
// simplex coordinates transform with the plan's exponent sign; for a
// right-side transform the perplex coordinates take the opposite sign
// (mu2 conjugate-commutes past the exponential).
inline QTensor fast_transform(const QTensor& x, const QftPlan& plan) {
    if (x.shape() != plan.shape) throw std::invalid_argument("fast_transform: shape mismatch");
    if (!x.is_vector() && !x.is_matrix())
        throw std::invalid_argument("fast_transform: 1D or 2D shape required");

    const Axis mu = plan.axis;
    const Axis mu2 = pick_mu2(mu);
    const int sgn = plan.direction == Direction::Forward ? -1 : +1;
    const int perp_sgn = plan.side == Side::Left ? sgn : -sgn;

    auto s = detail::split_signal(x, mu, mu2);
    const std::size_t rows = x.is_matrix() ? x.shape()[0] : 1;
    const std::size_t cols = x.is_matrix() ? x.shape()[1] : x.shape()[0];

    double coef = 1.0;
    for (std::size_t d = 0; d < x.rank(); ++d)
        coef *= detail::dim_coefficient(x.shape()[d], plan.direction, plan.normalization);

    for (std::size_t dim = x.is_matrix() ? 0 : 1; dim < 2; ++dim) {
        detail::fft_dim(s.simplex, rows, cols, dim, sgn);
        detail::fft_dim(s.perplex, rows, cols, dim, perp_sgn);
    }
    return detail::merge_signal(s, x.shape(), mu, mu2, coef);
}

// Q^mu_N . Q^mu_N is the permutation n -> [N-n]_N (a flip that fixes 0 and,
// for even N, N/2); returned as an index list.
inline std::vector<std::size_t> qft_self_product(std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) perm[k] = (n - k) % n;
    return perm;
}

// p Q^nu p~ entrywise, with p from axis_rotation_between; lands on Q^mu.
inline QftMatrix conjugate_by_rotation(const QftMatrix& qnu, const Axis& mu) {
    const Quaternion p = axis_rotation_between(mu, qnu.axis);
    QftMatrix out{qnu.n, mu, QTensor::matrix(qnu.n, qnu.n)};
    for (std::size_t i = 0; i < qnu.n; ++i)
        for (std::size_t j = 0; j < qnu.n; ++j)
            out.entries.at(i, j) = p * qnu.entries.at(i, j) * conj(p);
    return out;
}

// Coefficients c with x = sum_k a_k c_k over the columns a_k of Q^mu (or of
// the Kronecker basis in 2D): c = Q^{-mu} x.
inline QTensor coordinates_in_basis(const QTensor& x, const Axis& axis) {
    QftPlan plan{x.shape(), axis, Side::Left, Direction::Inverse, Normalization::Symmetric};
    return fast_transform(x, plan);
}

}  // namespace quatspec
