#pragma once

// Seeded random quaternions, axes and tensors.  Gaussian deviates go through
// an explicit Box-Muller so a given seed produces the same stream on every
// platform (std::normal_distribution does not guarantee that).

#include <cstdint>
#include <random>

#include "quatspec/quaternion.hpp"
#include "quatspec/tensor.hpp"

namespace quatspec {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::acos(-1.0) * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Quaternion quaternion() {
        const double a = gaussian(), b = gaussian(), c = gaussian(), d = gaussian();
        return {a, b, c, d};
    }

    Quaternion unit_quaternion() {
        Quaternion q = quaternion();
        double n = norm(q);
        while (n < 1e-6) {
            q = quaternion();
            n = norm(q);
        }
        return q / n;
    }

    Axis axis() {
        while (true) {
            const Quaternion v{0, gaussian(), gaussian(), gaussian()};
            if (norm(v) > 1e-6) return Axis{v};
        }
    }

    QTensor tensor(std::vector<std::size_t> shape) {
        QTensor t{std::move(shape)};
        for (auto& q : t.data()) q = quaternion();
        return t;
    }

    // Uniform on the unit sphere of H^n (as a 4n-dimensional real sphere).
    QTensor unit_vector(std::size_t n) {
        QTensor t = tensor({n});
        double n2 = 0;
        for (const auto& q : t.data()) n2 += norm_sq(q);
        const double scale = 1.0 / std::sqrt(n2);
        for (auto& q : t.data()) q = q * scale;
        return t;
    }

  private:
    std::mt19937_64 engine_;
    double spare_{0};
    bool have_spare_{false};
};

// Derives an independent stream for sample k; used by the Monte-Carlo
// loops so parallel chunking does not change the draw for a given index.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace quatspec
