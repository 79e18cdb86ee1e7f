#pragma once

// Minimal dense complex matrix with the two factorizations the toolkit
// needs: a one-sided Jacobi SVD and a two-sided Hermitian Jacobi
// eigensolver.  Self-contained on purpose; the brute-force quaternion SVD
// oracle must not depend on an external numeric library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace quatspec {

using cplx = std::complex<double>;

class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    CMatrix adjoint() const {
        CMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
        return r;
    }

    CMatrix operator*(const CMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("CMatrix: dimension mismatch");
        CMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx aik = at(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    std::size_t rows_{0}, cols_{0};
    std::vector<cplx> data_;
};

struct ComplexSvd {
    std::vector<double> sigma;  // descending
    CMatrix v;                  // right singular vectors (columns)
    CMatrix av;                 // A * v; column k = u_k * sigma_k
};

// One-sided Jacobi: rotate column pairs of A until all are mutually
// orthogonal.  Known for high relative accuracy on small dense problems,
// which is what the 1e-10 oracle target asks for.
inline ComplexSvd jacobi_svd(CMatrix a, bool want_vectors = true) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) throw std::invalid_argument("jacobi_svd: requires rows >= cols");
    CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix{};

    const double conv = 1e-15;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double app = 0, aqq = 0;
                cplx apq{};
                for (std::size_t i = 0; i < m; ++i) {
                    const cplx x = a.at(i, p), y = a.at(i, q);
                    app += std::norm(x);
                    aqq += std::norm(y);
                    apq += std::conj(x) * y;
                }
                const double offd = std::abs(apq);
                if (offd <= conv * std::sqrt(app * aqq) || offd == 0.0) continue;
                rotated = true;

                const cplx phase = apq / offd;
                const double tau = (aqq - app) / (2.0 * offd);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                for (std::size_t i = 0; i < m; ++i) {
                    const cplx x = a.at(i, p), y = a.at(i, q);
                    a.at(i, p) = cs * x - sn * std::conj(phase) * y;
                    a.at(i, q) = sn * phase * x + cs * y;
                }
                if (want_vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx x = v.at(i, p), y = v.at(i, q);
                        v.at(i, p) = cs * x - sn * std::conj(phase) * y;
                        v.at(i, q) = sn * phase * x + cs * y;
                    }
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i) s += std::norm(a.at(i, j));
        sigma[j] = std::sqrt(s);
    }

    // sort descending, permuting columns to match
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return sigma[l] > sigma[r]; });

    ComplexSvd out;
    out.sigma.resize(n);
    out.av = CMatrix(m, n);
    if (want_vectors) out.v = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.sigma[j] = sigma[order[j]];
        for (std::size_t i = 0; i < m; ++i) out.av.at(i, j) = a.at(i, order[j]);
        if (want_vectors)
            for (std::size_t i = 0; i < n; ++i) out.v.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

inline std::vector<double> singular_values_complex(const CMatrix& a) {
    if (a.rows() >= a.cols()) return jacobi_svd(a, false).sigma;
    return jacobi_svd(a.adjoint(), false).sigma;
}

struct ComplexEigen {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns, matching values
};

// Cyclic Jacobi for Hermitian matrices; values come out real, vectors unitary.
inline ComplexEigen hermitian_eigen(CMatrix a, bool want_vectors = true) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("hermitian_eigen: square matrix required");
    CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix{};

    double scale = a.max_abs();
    if (scale == 0.0) scale = 1.0;
    const double conv = 1e-15 * scale;
    const int max_sweeps = 60;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a.at(p, q)));
        if (off <= conv) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx h = a.at(p, q);
                const double ah = std::abs(h);
                if (ah <= conv) continue;

                const cplx phase = h / ah;
                const double app = a.at(p, p).real(), aqq = a.at(q, q).real();
                const double tau = (app - aqq) / (2.0 * ah);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                // G: (p,p)=cs, (p,q)=-conj(s), (q,p)=s, (q,q)=cs with s = sn*conj(phase)
                const cplx s = sn * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {  // A <- A G
                    const cplx x = a.at(i, p), y = a.at(i, q);
                    a.at(i, p) = cs * x + s * y;
                    a.at(i, q) = -std::conj(s) * x + cs * y;
                }
                for (std::size_t i = 0; i < n; ++i) {  // A <- G^H A
                    const cplx x = a.at(p, i), y = a.at(q, i);
                    a.at(p, i) = cs * x + std::conj(s) * y;
                    a.at(q, i) = -s * x + cs * y;
                }
                if (want_vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx x = v.at(i, p), y = v.at(i, q);
                        v.at(i, p) = cs * x + s * y;
                        v.at(i, q) = -std::conj(s) * x + cs * y;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return a.at(l, l).real() < a.at(r, r).real(); });

    ComplexEigen out;
    out.values.resize(n);
    if (want_vectors) out.vectors = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a.at(order[j], order[j]).real();
        if (want_vectors)
            for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

}  // namespace quatspec
