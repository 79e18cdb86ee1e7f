#pragma once

// Dense quaternion tensors: 1D vectors, 2D matrices and M x N grids.
// Row-major flat storage, shape fixed at construction.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "quatspec/quaternion.hpp"

namespace quatspec {

class QTensor {
  public:
    QTensor() = default;

    explicit QTensor(std::vector<std::size_t> shape)
        : shape_(std::move(shape)), data_(count(shape_)) {}

    QTensor(std::vector<std::size_t> shape, std::vector<Quaternion> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        if (data_.size() != count(shape_))
            throw std::invalid_argument("QTensor: data length does not match shape");
    }

    static QTensor vector(std::vector<Quaternion> values) {
        const std::size_t n = values.size();
        return QTensor{{n}, std::move(values)};
    }

    static QTensor matrix(std::size_t rows, std::size_t cols) {
        return QTensor{{rows, cols}};
    }

    static QTensor identity(std::size_t n) {
        QTensor t = matrix(n, n);
        for (std::size_t i = 0; i < n; ++i) t.at(i, i) = Quaternion{1, 0, 0, 0};
        return t;
    }

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    bool is_vector() const { return shape_.size() == 1; }
    bool is_matrix() const { return shape_.size() == 2; }

    std::size_t rows() const { return require_2d(), shape_[0]; }
    std::size_t cols() const { return require_2d(), shape_[1]; }

    Quaternion& operator[](std::size_t i) { return data_[i]; }
    const Quaternion& operator[](std::size_t i) const { return data_[i]; }

    Quaternion& at(std::size_t i, std::size_t j) { return require_2d(), data_[i * shape_[1] + j]; }
    const Quaternion& at(std::size_t i, std::size_t j) const {
        return require_2d(), data_[i * shape_[1] + j];
    }

    std::vector<Quaternion>& data() { return data_; }
    const std::vector<Quaternion>& data() const { return data_; }

    bool same_shape(const QTensor& o) const { return shape_ == o.shape_; }

    QTensor operator+(const QTensor& o) const {
        check_shape(o);
        QTensor r{shape_};
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    QTensor operator-(const QTensor& o) const {
        check_shape(o);
        QTensor r{shape_};
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    QTensor scaled_left(const Quaternion& p) const {
        QTensor r{shape_};
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = p * data_[i];
        return r;
    }

    QTensor scaled_right(const Quaternion& p) const {
        QTensor r{shape_};
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * p;
        return r;
    }

  private:
    static std::size_t count(const std::vector<std::size_t>& shape) {
        if (shape.empty()) return 0;
        std::size_t n = 1;
        for (std::size_t d : shape) n *= d;
        return n;
    }
    void require_2d() const {
        if (shape_.size() != 2) throw std::invalid_argument("QTensor: 2D shape required");
    }
    void check_shape(const QTensor& o) const {
        if (shape_ != o.shape_) throw std::invalid_argument("QTensor: shape mismatch");
    }

    std::vector<std::size_t> shape_;
    std::vector<Quaternion> data_;
};

// Frobenius-style vector norm: sqrt of the sum of squared entry magnitudes.
inline double frobenius_norm(const QTensor& t) {
    double s = 0;
    for (const auto& q : t.data()) s += norm_sq(q);
    return std::sqrt(s);
}

inline double max_abs(const QTensor& t) {
    double m = 0;
    for (const auto& q : t.data()) m = std::max(m, norm(q));
    return m;
}

inline double max_abs_diff(const QTensor& a, const QTensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, norm(a[i] - b[i]));
    return m;
}

inline QTensor matmul(const QTensor& a, const QTensor& b) {
    if (!a.is_matrix() || !b.is_matrix() || a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions do not match");
    QTensor r = QTensor::matrix(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Quaternion& aik = a.at(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

inline QTensor matvec(const QTensor& a, const QTensor& x) {
    if (!a.is_matrix() || !x.is_vector() || a.cols() != x.size())
        throw std::invalid_argument("matvec: dimensions do not match");
    QTensor r{{a.rows()}};
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a.at(i, k) * x[k];
    return r;
}

inline QTensor hermitian_transpose(const QTensor& a) {
    if (!a.is_matrix()) throw std::invalid_argument("hermitian_transpose: 2D shape required");
    QTensor r = QTensor::matrix(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = conj(a.at(i, j));
    return r;
}

inline QTensor transpose(const QTensor& a) {
    if (!a.is_matrix()) throw std::invalid_argument("transpose: 2D shape required");
    QTensor r = QTensor::matrix(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
    return r;
}

inline QTensor conjugate(const QTensor& a) {
    QTensor r{a.shape()};
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = conj(a[i]);
    return r;
}

// <a, b> = sum conj(a_i) b_i; right-linear in b.
inline Quaternion inner(const QTensor& a, const QTensor& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("inner: shape mismatch");
    Quaternion s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += conj(a[i]) * b[i];
    return s;
}

}  // namespace quatspec
