#pragma once

// Deterministic demo kernels.  The integer-pattern kernel is the fixed
// test filter used by the benchmark and clipping walkthroughs; its four
// channels follow small modular patterns of the grid coordinates, so any
// two builds produce the identical filter.

#include <cstddef>

#include "quatspec/tensor.hpp"

namespace quatspec {

inline QTensor pattern_kernel(std::size_t size = 9) {
    QTensor k{{size, size}};
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const auto di = static_cast<double>((i * j) % 9) - 4.0;
            const auto dx = static_cast<double>((i + 2 * j) % 7) - 3.0;
            const auto dy = static_cast<double>((2 * i + j) % 5) - 2.0;
            const auto dz = static_cast<double>((i * i + j * j) % 3) - 1.0;
            k.at(i, j) = Quaternion{di, dx, dy, dz};
        }
    return k;
}

// Embed a filter at the top-left of a larger zero-padded grid (or vector).
inline QTensor pad_kernel(const QTensor& kernel, const std::vector<std::size_t>& padded_shape) {
    if (padded_shape.size() != kernel.rank())
        throw std::invalid_argument("pad_kernel: rank mismatch");
    for (std::size_t d = 0; d < padded_shape.size(); ++d)
        if (padded_shape[d] < kernel.shape()[d])
            throw std::invalid_argument("pad_kernel: padded size smaller than the kernel");
    QTensor out{padded_shape};
    if (kernel.is_vector()) {
        for (std::size_t i = 0; i < kernel.size(); ++i) out[i] = kernel[i];
    } else {
        for (std::size_t i = 0; i < kernel.rows(); ++i)
            for (std::size_t j = 0; j < kernel.cols(); ++j) out.at(i, j) = kernel.at(i, j);
    }
    return out;
}

// Default transform size for a support of k samples: 4k, rounded up to even.
inline std::size_t default_padded_size(std::size_t support) {
    std::size_t n = 4 * support;
    if (n % 2 != 0) ++n;
    return n;
}

}  // namespace quatspec
