#pragma once

// Quaternion matrix factorizations through the complex adjoint: the
// brute-force QSVD used as ground truth everywhere, the 2x2 Hermitian
// eigensolver behind the Xi blocks, and the rank-deficiency witness.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "quatspec/complex_adjoint.hpp"
#include "quatspec/complex_matrix.hpp"
#include "quatspec/tensor.hpp"
#include "quatspec/tolerances.hpp"

namespace quatspec {

// Singular values of a quaternion matrix, descending.  The complex adjoint
// carries each value twice; pairs are averaged and reported once.
inline std::vector<double> qsvd(const QTensor& a) {
    if (!a.is_matrix()) throw std::invalid_argument("qsvd: 2D shape required");
    const auto doubled = singular_values_complex(to_complex_adjoint(a).matrix);
    const double scale = std::max(1.0, doubled.empty() ? 0.0 : doubled.front());
    std::vector<double> out;
    out.reserve(doubled.size() / 2);
    for (std::size_t k = 0; k + 1 < doubled.size(); k += 2) {
        if (doubled[k] - doubled[k + 1] > tol::sigma_group_rel * scale)
            throw std::runtime_error("qsvd: adjoint spectrum failed to pair");
        out.push_back(0.5 * (doubled[k] + doubled[k + 1]));
    }
    return out;
}

// Smallest singular value; ~0 certifies a nontrivial nullspace.
inline double rank_deficiency_witness(const QTensor& a) {
    if (!a.is_matrix() || a.rows() != a.cols())
        throw std::invalid_argument("rank_deficiency_witness: square matrix required");
    const auto sigma = qsvd(a);
    return sigma.empty() ? 0.0 : sigma.back();
}

struct HermitianEigen2x2 {
    double lo{0}, hi{0};   // the two real eigenvalues, ascending
    QTensor vectors;       // 2x2; column k is the eigenvector of (lo, hi)[k]
};

namespace detail {

// Pull a complex eigenvector of the adjoint back to a quaternion vector:
// psi(v) = [v1; -conj(v2)] for v = v1 + v2 j.
inline QTensor adjoint_vector_to_quaternion(const CMatrix& vectors, std::size_t col,
                                            std::size_t n) {
    QTensor v{{n}};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = vectors.at(i, col);
        const cplx b = vectors.at(n + i, col);
        const cplx v2 = -std::conj(b);
        v[i] = Quaternion{a.real(), a.imag(), v2.real(), v2.imag()};
    }
    return v;
}

}  // namespace detail

// Real eigenvalues of a 2x2 Hermitian quaternion matrix, via the complex
// adjoint and the spectral theorem.  Each eigenvalue shows up twice in the
// 4x4 adjoint; the doubled spectrum is collapsed and one eigenvector per
// eigenvalue is mapped back and orthonormalized.
inline HermitianEigen2x2 hermitian_eigen_2x2(const QTensor& h) {
    if (!h.is_matrix() || h.rows() != 2 || h.cols() != 2)
        throw std::invalid_argument("hermitian_eigen_2x2: 2x2 matrix required");
    const double scale = 1.0 + max_abs(h);
    if (max_abs_diff(h, hermitian_transpose(h)) > tol::hermitian_block * scale)
        throw std::domain_error("hermitian_eigen_2x2: matrix is not Hermitian");

    const auto eig = hermitian_eigen(to_complex_adjoint(h).matrix);  // 4 values, ascending
    if (eig.values[1] - eig.values[0] > tol::sigma_group_rel * scale ||
        eig.values[3] - eig.values[2] > tol::sigma_group_rel * scale)
        throw std::runtime_error("hermitian_eigen_2x2: adjoint spectrum failed to pair");

    HermitianEigen2x2 out;
    out.lo = 0.5 * (eig.values[0] + eig.values[1]);
    out.hi = 0.5 * (eig.values[2] + eig.values[3]);

    QTensor v0 = detail::adjoint_vector_to_quaternion(eig.vectors, 0, 2);
    QTensor v1 = detail::adjoint_vector_to_quaternion(eig.vectors, 2, 2);
    v0 = v0.scaled_right(Quaternion{1.0 / frobenius_norm(v0), 0, 0, 0});
    // right-module Gram-Schmidt against v0
    v1 = v1 - v0.scaled_right(inner(v0, v1));
    double n1 = frobenius_norm(v1);
    if (n1 < 1e-8) {
        // degenerate pullback; complete the basis from coordinate vectors
        for (std::size_t k = 0; k < 2 && n1 < 1e-8; ++k) {
            QTensor e{{2}};
            e[k] = Quaternion{1, 0, 0, 0};
            v1 = e - v0.scaled_right(inner(v0, e));
            n1 = frobenius_norm(v1);
        }
    }
    v1 = v1.scaled_right(Quaternion{1.0 / n1, 0, 0, 0});

    out.vectors = QTensor::matrix(2, 2);
    out.vectors.at(0, 0) = v0[0];
    out.vectors.at(1, 0) = v0[1];
    out.vectors.at(0, 1) = v1[0];
    out.vectors.at(1, 1) = v1[1];
    return out;
}

}  // namespace quatspec
