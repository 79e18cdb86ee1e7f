#pragma once

// Quaternionic circulant operators and their left eigenstructure.  A
// circulant encodes circular left convolution by its kernel; every column
// of Q^{-mu}_N is an eigenvector, and the left eigenvalues are the
// asymmetric right QFT of the kernel.  The same picture holds for
// doubly-block circulants with the Kronecker basis and the coordinate
// map k <-> i + M j.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "quatspec/linalg.hpp"
#include "quatspec/qft.hpp"
#include "quatspec/quaternion.hpp"
#include "quatspec/tensor.hpp"
#include "quatspec/tolerances.hpp"

namespace quatspec {

// Above this size, convolutions route through the transform-based fast path.
inline constexpr std::size_t kDirectMatvecLimit = 64;

struct LeftSpectrum {
    Axis axis;       // values pair with the columns of Q^{-axis}
    QTensor values;  // same shape as the kernel ({N} or {M, N})
};

namespace detail {

inline QTensor right_qft_asym(const QTensor& kernel, const Axis& axis, Direction dir) {
    const QftPlan plan{kernel.shape(), axis, Side::Right, dir, Normalization::Asymmetric};
    return kernel.size() > kDirectMatvecLimit ? fast_transform(kernel, plan)
                                              : transform(kernel, plan);
}

// Bx via the eigenstructure: expand x over the columns of Q^mu, scale by
// the left eigenvalues taken at axis -mu, then map the simplex part back
// with Q^mu and the (conjugate-commuting) perplex part with Q^{-mu}.
inline QTensor matvec_spectral(const QTensor& kernel, const QTensor& x) {
    const Axis mu = Axis::i();
    const Axis mu2 = pick_mu2(mu);
    const QftPlan coords{x.shape(), mu, Side::Left, Direction::Inverse, Normalization::Symmetric};
    const QTensor c = fast_transform(x, coords);
    const QTensor lambda = right_qft_asym(kernel, -mu, Direction::Forward);

    QTensor y_par{x.shape()}, y_perp{x.shape()};
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto split = symplectic_split(lambda[k], mu, mu2);
        y_par[k] = split.parallel * c[k];
        y_perp[k] = split.perp * c[k];
    }
    const QftPlan fwd{x.shape(), mu, Side::Left, Direction::Forward, Normalization::Symmetric};
    return fast_transform(y_par, fwd) + fast_transform(y_perp, coords);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// 1D circulant
// ---------------------------------------------------------------------------

class CirculantOp {
  public:
    explicit CirculantOp(QTensor kernel) : kernel_(std::move(kernel)) {
        if (!kernel_.is_vector() || kernel_.size() == 0)
            throw std::invalid_argument("CirculantOp: nonempty 1D kernel required");
    }

    const QTensor& kernel() const { return kernel_; }
    std::size_t size() const { return kernel_.size(); }

    // (k (*) x)[i] = sum_n k[i-n]_N x[n]
    QTensor matvec(const QTensor& x) const {
        if (!x.is_vector() || x.size() != size())
            throw std::invalid_argument("CirculantOp: length mismatch");
        if (size() > kDirectMatvecLimit) return detail::matvec_spectral(kernel_, x);
        const std::size_t n = size();
        QTensor out{{n}};
        for (std::size_t i = 0; i < n; ++i) {
            Quaternion acc{};
            for (std::size_t t = 0; t < n; ++t) acc += kernel_[(i + n - t) % n] * x[t];
            out[i] = acc;
        }
        return out;
    }

    // entry(i, j) = kernel[i - j]_N
    QTensor materialize() const {
        const std::size_t n = size();
        QTensor m = QTensor::matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = kernel_[(i + n - j) % n];
        return m;
    }

  private:
    QTensor kernel_;
};

// Kernel of C^T: [c0, c_{N-1}, ..., c1].
inline CirculantOp transpose_kernel(const CirculantOp& c) {
    const std::size_t n = c.size();
    QTensor k{{n}};
    for (std::size_t t = 0; t < n; ++t) k[t] = c.kernel()[(n - t) % n];
    return CirculantOp{std::move(k)};
}

// Kernel of C^H: conjugated transpose kernel.
inline CirculantOp hermitian_kernel(const CirculantOp& c) {
    const std::size_t n = c.size();
    QTensor k{{n}};
    for (std::size_t t = 0; t < n; ++t) k[t] = conj(c.kernel()[(n - t) % n]);
    return CirculantOp{std::move(k)};
}

// Real cyclic permutation sending column j to j+1 (mod N).
inline QTensor cyclic_permutation_matrix(std::size_t n) {
    QTensor p = QTensor::matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) p.at((j + 1) % n, j) = Quaternion{1, 0, 0, 0};
    return p;
}

// C as sum c_k P^k over the cyclic permutation P; the coefficients are the
// kernel itself.  Returned together with the explicitly evaluated
// polynomial so callers can check the reconstruction.
struct MatrixPolynomial {
    QTensor coefficients;
    QTensor reconstruction;
};

inline MatrixPolynomial as_matrix_polynomial(const CirculantOp& c) {
    const std::size_t n = c.size();
    const QTensor p = cyclic_permutation_matrix(n);
    QTensor power = QTensor::identity(n);
    QTensor sum = QTensor::matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sum.at(i, j) += c.kernel()[k] * power.at(i, j);
        power = matmul(power, p);
    }
    return {c.kernel(), std::move(sum)};
}

// Column k of Q^{-mu}_N: the eigenvector paired with the k-th left eigenvalue.
inline QTensor circulant_eigenvector(std::size_t n, const Axis& axis, std::size_t k) {
    const double two_pi = 2.0 * std::acos(-1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    QTensor v{{n}};
    for (std::size_t m = 0; m < n; ++m)
        v[m] = qexp(axis.direction() *
                    (two_pi * static_cast<double>((m * k) % n) / static_cast<double>(n))) *
               scale;
    return v;
}

inline LeftSpectrum left_spectrum(const CirculantOp& c, const Axis& axis) {
    return {axis, detail::right_qft_asym(c.kernel(), axis, Direction::Forward)};
}

// Left eigenvalues of C^H for the same eigenvectors: the conjugate of the
// asymmetric left QFT of the kernel of C.
inline LeftSpectrum left_spectrum_of_hermitian(const CirculantOp& c, const Axis& axis) {
    const QftPlan plan{c.kernel().shape(), axis, Side::Left, Direction::Forward,
                       Normalization::Asymmetric};
    QTensor values = transform(c.kernel(), plan);
    for (auto& q : values.data()) q = conj(q);
    return {axis, std::move(values)};
}

inline CirculantOp kernel_from_spectrum(const LeftSpectrum& s) {
    if (!s.values.is_vector())
        throw std::invalid_argument("kernel_from_spectrum: 1D spectrum required");
    return CirculantOp{detail::right_qft_asym(s.values, s.axis, Direction::Inverse)};
}

// lambda^mu_i = lambda^{-mu}_{[N-i]_N}; DC and (even N) N/2 stay in place.
inline bool spectrum_flip_check(const CirculantOp& c, const Axis& axis,
                                double tolerance = tol::round_trip) {
    const QTensor plus = left_spectrum(c, axis).values;
    const QTensor minus = left_spectrum(c, -axis).values;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
        if (norm(plus[i] - minus[(n - i) % n]) > tolerance) return false;
    return true;
}

inline double eigen_residual_max(const CirculantOp& c, const LeftSpectrum& s) {
    const std::size_t n = c.size();
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const QTensor alpha = circulant_eigenvector(n, s.axis, k);
        const QTensor lhs = c.matvec(alpha);
        worst = std::max(worst, frobenius_norm(lhs - alpha.scaled_left(s.values[k])));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Eigenstructure of sums, scalar products, products and inverses
// ---------------------------------------------------------------------------

struct AlgebraPrediction {
    LeftSpectrum spectrum;  // value i pairs with eigenvector column i
    QTensor eigenvectors;   // N x N; columns of Q^{-mu} unless transformed
};

namespace detail {

inline QTensor qft_inverse_columns(std::size_t n, const Axis& axis) {
    QTensor m = QTensor::matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const QTensor col = circulant_eigenvector(n, axis, k);
        for (std::size_t r = 0; r < n; ++r) m.at(r, k) = col[r];
    }
    return m;
}

// Single component of the asymmetric right QFT; used where each index
// needs its own rotated axis.
inline Quaternion spectrum_component(const QTensor& kernel, const Axis& axis, std::size_t u) {
    const std::size_t n = kernel.size();
    const double two_pi = 2.0 * std::acos(-1.0);
    Quaternion acc{};
    for (std::size_t t = 0; t < n; ++t)
        acc += kernel[t] * qexp(axis.direction() * (-two_pi * static_cast<double>((t * u) % n) /
                                                    static_cast<double>(n)));
    return acc;
}

}  // namespace detail

inline AlgebraPrediction predict_sum(const CirculantOp& l, const CirculantOp& k, const Axis& mu) {
    if (l.size() != k.size()) throw std::invalid_argument("predict_sum: size mismatch");
    return {{mu, left_spectrum(l, mu).values + left_spectrum(k, mu).values},
            detail::qft_inverse_columns(l.size(), mu)};
}

inline AlgebraPrediction predict_scale_left(const Quaternion& p, const CirculantOp& l,
                                            const Axis& mu) {
    return {{mu, left_spectrum(l, mu).values.scaled_left(p)},
            detail::qft_inverse_columns(l.size(), mu)};
}

// Lp has eigenvalue lambda^{p mu p^-1}_i p for the unchanged eigenvector.
inline AlgebraPrediction predict_scale_right(const CirculantOp& l, const Quaternion& p,
                                             const Axis& mu) {
    QTensor values{{l.size()}};
    if (norm(p) > 0) {
        const Quaternion pu = p / norm(p);
        const Axis rotated{pu * mu.direction() * conj(pu)};
        values = left_spectrum(l, rotated).values.scaled_right(p);
    }
    return {{mu, std::move(values)}, detail::qft_inverse_columns(l.size(), mu)};
}

// LK: eigenvalue lambda^{kappa_u mu kappa_u^-1}_i kappa_i, or 0 when
// kappa_i vanishes.
inline AlgebraPrediction predict_product(const CirculantOp& l, const CirculantOp& k,
                                         const Axis& mu) {
    if (l.size() != k.size()) throw std::invalid_argument("predict_product: size mismatch");
    const QTensor kappa = left_spectrum(k, mu).values;
    QTensor values{{l.size()}};
    for (std::size_t i = 0; i < l.size(); ++i) {
        const double nk = norm(kappa[i]);
        if (nk < tol::singular) continue;
        const Quaternion qu = kappa[i] / nk;
        const Axis rotated{qu * mu.direction() * conj(qu)};
        values[i] = detail::spectrum_component(l.kernel(), rotated, i) * kappa[i];
    }
    return {{mu, std::move(values)}, detail::qft_inverse_columns(l.size(), mu)};
}

// L^{-1}: eigenvalue lambda_i^{-1} with the transformed eigenvector
// lambda_i w lambda_i^{-1}.
inline AlgebraPrediction predict_inverse(const CirculantOp& l, const Axis& mu) {
    if (rank_deficiency_witness(l.materialize()) <= tol::singular)
        throw std::domain_error("predict_inverse: operator is singular");
    const QTensor lambda = left_spectrum(l, mu).values;
    QTensor values{{l.size()}};
    QTensor vectors = QTensor::matrix(l.size(), l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        const Quaternion li = lambda[i];
        const Quaternion li_inv = inverse(li);
        values[i] = li_inv;
        const QTensor w = circulant_eigenvector(l.size(), mu, i);
        for (std::size_t r = 0; r < l.size(); ++r) vectors.at(r, i) = li * w[r] * li_inv;
    }
    return {{mu, std::move(values)}, std::move(vectors)};
}

// ---------------------------------------------------------------------------
// Convolution theorems (symmetric transforms, sqrt(N) factor as printed)
// ---------------------------------------------------------------------------

// Variant naming: first letter = transform side, second = convolution side.
enum class ConvTheorem { LL, LR, RL, RR };

inline QTensor circular_convolve_left(const QTensor& h, const QTensor& f) {
    const std::size_t n = h.size();
    QTensor out{{n}};
    for (std::size_t m = 0; m < n; ++m) {
        Quaternion acc{};
        for (std::size_t i = 0; i < n; ++i) acc += h[i] * f[(m + n - i) % n];
        out[m] = acc;
    }
    return out;
}

inline QTensor circular_convolve_right(const QTensor& f, const QTensor& h) {
    const std::size_t n = h.size();
    QTensor out{{n}};
    for (std::size_t m = 0; m < n; ++m) {
        Quaternion acc{};
        for (std::size_t i = 0; i < n; ++i) acc += f[(m + n - i) % n] * h[i];
        out[m] = acc;
    }
    return out;
}

namespace detail {

struct SymplecticVectors {
    QTensor part1;  // simplex coefficients (in span{1, mu})
    QTensor part2;  // perplex coefficients: G = part1 + part2 * mu2
};

inline SymplecticVectors decompose(const QTensor& g, const Axis& mu, const Axis& mu2) {
    SymplecticVectors out{QTensor{g.shape()}, QTensor{g.shape()}};
    const Quaternion m2 = mu2.direction();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto s = symplectic_split(g[i], mu, mu2);
        out.part1[i] = s.parallel;
        out.part2[i] = s.perp * (-m2);  // mu2^{-1} = -mu2
    }
    return out;
}

}  // namespace detail

// Evaluates both sides of the chosen identity and returns the max
// entrywise deviation.
inline double convolution_theorem_check(const QTensor& f, const QTensor& h, ConvTheorem variant,
                                        const Axis& mu, const Axis& mu2) {
    if (!f.is_vector() || !f.same_shape(h))
        throw std::invalid_argument("convolution_theorem_check: equal-length 1D signals required");
    if (std::abs(dot(mu, mu2)) > tol::axis_orthogonal)
        throw std::domain_error("convolution_theorem_check: mu2 must be orthogonal to mu");

    const std::size_t n = f.size();
    const double root_n = std::sqrt(static_cast<double>(n));
    const Quaternion m2 = mu2.direction();

    const auto sym = [&](const QTensor& x, Side side, const Axis& ax) {
        return transform(x, QftPlan{x.shape(), ax, side, Direction::Forward,
                                    Normalization::Symmetric});
    };

    QTensor lhs{{n}}, rhs{{n}};
    switch (variant) {
        case ConvTheorem::LR: {  // F_L of f * h
            lhs = sym(circular_convolve_right(f, h), Side::Left, mu);
            const auto fl = detail::decompose(sym(f, Side::Left, mu), mu, mu2);
            const QTensor hl = sym(h, Side::Left, mu);
            const QTensor hml = sym(h, Side::Left, -mu);
            for (std::size_t u = 0; u < n; ++u)
                rhs[u] = (fl.part1[u] * hl[u] + fl.part2[u] * m2 * hml[u]) * root_n;
            break;
        }
        case ConvTheorem::RR: {  // F_R of f * h
            lhs = sym(circular_convolve_right(f, h), Side::Right, mu);
            const auto hr = detail::decompose(sym(h, Side::Right, mu), mu, mu2);
            const QTensor fr = sym(f, Side::Right, mu);
            const QTensor fmr = sym(f, Side::Right, -mu);
            for (std::size_t u = 0; u < n; ++u)
                rhs[u] = (fr[u] * hr.part1[u] + fmr[u] * hr.part2[u] * m2) * root_n;
            break;
        }
        case ConvTheorem::LL: {  // F_L of h * f
            lhs = sym(circular_convolve_left(h, f), Side::Left, mu);
            const auto hl = detail::decompose(sym(h, Side::Left, mu), mu, mu2);
            const QTensor fl = sym(f, Side::Left, mu);
            const QTensor fml = sym(f, Side::Left, -mu);
            for (std::size_t u = 0; u < n; ++u)
                rhs[u] = (hl.part1[u] * fl[u] + hl.part2[u] * m2 * fml[u]) * root_n;
            break;
        }
        case ConvTheorem::RL: {  // F_R of h * f
            lhs = sym(circular_convolve_left(h, f), Side::Right, mu);
            const auto fr = detail::decompose(sym(f, Side::Right, mu), mu, mu2);
            const QTensor hr = sym(h, Side::Right, mu);
            const QTensor hmr = sym(h, Side::Right, -mu);
            for (std::size_t u = 0; u < n; ++u)
                rhs[u] = (hr[u] * fr.part1[u] + hmr[u] * fr.part2[u] * m2) * root_n;
            break;
        }
    }
    return max_abs_diff(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Doubly-block circulant (2D convolution)
// ---------------------------------------------------------------------------

// Coordinate map between the M x N grid and the vectorized operator index.
inline std::size_t vec_index(std::size_t i, std::size_t j, std::size_t m) { return i + m * j; }

inline QTensor vec_2d(const QTensor& x) {
    const std::size_t m = x.rows(), n = x.cols();
    QTensor out{{m * n}};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out[vec_index(i, j, m)] = x.at(i, j);
    return out;
}

inline QTensor unvec_2d(const QTensor& v, std::size_t m, std::size_t n) {
    QTensor out{{m, n}};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = v[vec_index(i, j, m)];
    return out;
}

class DoublyBlockCirculantOp {
  public:
    explicit DoublyBlockCirculantOp(QTensor kernel) : kernel_(std::move(kernel)) {
        if (!kernel_.is_matrix() || kernel_.size() == 0)
            throw std::invalid_argument("DoublyBlockCirculantOp: nonempty 2D kernel required");
    }

    const QTensor& kernel() const { return kernel_; }
    std::size_t rows() const { return kernel_.rows(); }
    std::size_t cols() const { return kernel_.cols(); }

    // (k (*) x)[i, j] = sum_{m, n} k[i-m, j-n]_{M,N} x[m, n]
    QTensor matvec(const QTensor& x) const {
        if (!x.same_shape(kernel_))
            throw std::invalid_argument("DoublyBlockCirculantOp: grid shape mismatch");
        if (x.size() > kDirectMatvecLimit) return detail::matvec_spectral(kernel_, x);
        const std::size_t m = rows(), n = cols();
        QTensor out{{m, n}};
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Quaternion acc{};
                for (std::size_t p = 0; p < m; ++p)
                    for (std::size_t q = 0; q < n; ++q)
                        acc += kernel_.at((i + m - p) % m, (j + n - q) % n) * x.at(p, q);
                out.at(i, j) = acc;
            }
        return out;
    }

    // MN x MN matrix over the map k <-> i + M j.
    QTensor materialize() const {
        const std::size_t m = rows(), n = cols(), total = m * n;
        QTensor out = QTensor::matrix(total, total);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t p = 0; p < m; ++p)
                    for (std::size_t q = 0; q < n; ++q)
                        out.at(vec_index(i, j, m), vec_index(p, q, m)) =
                            kernel_.at((i + m - p) % m, (j + n - q) % n);
        return out;
    }

  private:
    QTensor kernel_;
};

// Vectorized Kronecker-basis eigenvector for grid frequency (u, v).
inline QTensor circulant_eigenvector_2d(std::size_t m, std::size_t n, const Axis& axis,
                                        std::size_t u, std::size_t v) {
    const double two_pi = 2.0 * std::acos(-1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m * n));
    QTensor vec{{m * n}};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double ang =
                two_pi * (static_cast<double>((i * u) % m) / static_cast<double>(m) +
                          static_cast<double>((j * v) % n) / static_cast<double>(n));
            vec[vec_index(i, j, m)] = qexp(axis.direction() * ang) * scale;
        }
    return vec;
}

// Grid of left eigenvalues: the asymmetric right 2D QFT of the kernel.
inline LeftSpectrum left_spectrum_2d(const DoublyBlockCirculantOp& d, const Axis& axis) {
    return {axis, detail::right_qft_asym(d.kernel(), axis, Direction::Forward)};
}

inline DoublyBlockCirculantOp kernel_from_spectrum_2d(const LeftSpectrum& s) {
    if (!s.values.is_matrix())
        throw std::invalid_argument("kernel_from_spectrum_2d: 2D spectrum required");
    return DoublyBlockCirculantOp{detail::right_qft_asym(s.values, s.axis, Direction::Inverse)};
}

inline double eigen_residual_max_2d(const DoublyBlockCirculantOp& d, const LeftSpectrum& s) {
    const std::size_t m = d.rows(), n = d.cols();
    const QTensor op = d.materialize();
    double worst = 0;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            const QTensor alpha = circulant_eigenvector_2d(m, n, s.axis, u, v);
            const QTensor lhs = matvec(op, alpha);
            worst = std::max(worst, frobenius_norm(lhs - alpha.scaled_left(s.values.at(u, v))));
        }
    return worst;
}

}  // namespace quatspec
