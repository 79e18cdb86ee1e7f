#pragma once

// Cayley-Dickson embedding of quaternion matrices into complex ones.
// A = A1 + A2 j maps to [[A1, A2], [-conj(A2), conj(A1)]]; the map is a
// ring homomorphism and doubles every singular value's multiplicity.

#include <stdexcept>

#include "quatspec/complex_matrix.hpp"
#include "quatspec/tensor.hpp"
#include "quatspec/tolerances.hpp"

namespace quatspec {

struct ComplexAdjoint {
    CMatrix matrix;  // 2M x 2N
    std::size_t quat_rows{0}, quat_cols{0};
};

inline ComplexAdjoint to_complex_adjoint(const QTensor& a) {
    if (!a.is_matrix()) throw std::invalid_argument("to_complex_adjoint: 2D shape required");
    const std::size_t m = a.rows(), n = a.cols();
    ComplexAdjoint out{CMatrix(2 * m, 2 * n), m, n};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Quaternion& q = a.at(i, j);
            const cplx a1{q.w, q.x}, a2{q.y, q.z};
            out.matrix.at(i, j) = a1;
            out.matrix.at(i, n + j) = a2;
            out.matrix.at(m + i, j) = -std::conj(a2);
            out.matrix.at(m + i, n + j) = std::conj(a1);
        }
    return out;
}

// Requires the block symmetry to hold within hermitian-block tolerance
// (scaled by the matrix magnitude); entries are averaged across the two
// redundant blocks before mapping back.
inline QTensor from_complex_adjoint(const ComplexAdjoint& x) {
    const std::size_t m = x.quat_rows, n = x.quat_cols;
    if (x.matrix.rows() != 2 * m || x.matrix.cols() != 2 * n)
        throw std::invalid_argument("from_complex_adjoint: inconsistent sizes");
    const double tolerance = tol::hermitian_block * (1.0 + x.matrix.max_abs());
    QTensor a = QTensor::matrix(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx a1 = x.matrix.at(i, j);
            const cplx a2 = x.matrix.at(i, n + j);
            const cplx b1 = x.matrix.at(m + i, n + j);  // should be conj(a1)
            const cplx b2 = x.matrix.at(m + i, j);      // should be -conj(a2)
            if (std::abs(b1 - std::conj(a1)) > tolerance ||
                std::abs(b2 + std::conj(a2)) > tolerance)
                throw std::domain_error("from_complex_adjoint: block symmetry violated");
            const cplx c1 = 0.5 * (a1 + std::conj(b1));
            const cplx c2 = 0.5 * (a2 - std::conj(b2));
            a.at(i, j) = Quaternion{c1.real(), c1.imag(), c2.real(), c2.imag()};
        }
    return a;
}

}  // namespace quatspec
