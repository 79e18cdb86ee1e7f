#pragma once

// Scalar quaternion arithmetic: Hamilton product, conjugation, exponential,
// polar form, rotations and the symplectic (simplex/perplex) decomposition.
// Everything here is a pure value operation; nothing allocates.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quatspec/tolerances.hpp"

namespace quatspec {

struct Quaternion {
    double w{0}, x{0}, y{0}, z{0};  // w + x i + y j + z k

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w{w_}, x{x_}, y{y_}, z{z_} {}
    constexpr Quaternion(double real) : w{real} {}

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

    // Hamilton product; non-commutative.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }
    constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

    Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
    Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
};

inline constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

inline constexpr double norm_sq(const Quaternion& q) {
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

// Euclidean inner product of the 4 real components.
inline constexpr double dot(const Quaternion& p, const Quaternion& q) {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

inline constexpr double scalar_part(const Quaternion& q) { return q.w; }
inline constexpr Quaternion vector_part(const Quaternion& q) { return {0, q.x, q.y, q.z}; }

inline Quaternion inverse(const Quaternion& q) {
    const double n2 = norm_sq(q);
    if (n2 == 0.0) throw std::domain_error("inverse of zero quaternion");
    return conj(q) / n2;
}

inline bool approx_equal(const Quaternion& p, const Quaternion& q, double tol) {
    return norm(p - q) <= tol;
}

// Pure unit quaternion; parameterizes a QFT.  The constructor zeroes the
// scalar part and normalizes what remains, rejecting near-zero vector parts
// rather than silently inventing a direction.
class Axis {
  public:
    explicit Axis(const Quaternion& q) {
        Quaternion v = vector_part(q);
        const double n = norm(v);
        if (n < tol::axis_min_norm)
            throw std::domain_error("axis requires a nonzero vector part");
        direction_ = v / n;
        direction_.w = 0.0;
    }
    Axis(double x, double y, double z) : Axis(Quaternion{0, x, y, z}) {}

    const Quaternion& direction() const { return direction_; }
    operator const Quaternion&() const { return direction_; }

    Axis operator-() const { return Axis{-direction_}; }
    bool operator==(const Axis&) const = default;

    static Axis i() { return Axis{1, 0, 0}; }
    static Axis j() { return Axis{0, 1, 0}; }
    static Axis k() { return Axis{0, 0, 1}; }

  private:
    Quaternion direction_;
};

inline double dot(const Axis& a, const Axis& b) {
    return dot(a.direction(), b.direction());
}

// e^q for q = a + v: e^a (cos|v| + (v/|v|) sin|v|).  The sin|v|/|v| factor
// switches to its series below tiny_angle to stay continuous at v = 0.
inline Quaternion qexp(const Quaternion& q) {
    const Quaternion v = vector_part(q);
    const double m = norm(v);
    const double ea = std::exp(q.w);
    double sinc;  // sin(m)/m
    if (m < tol::tiny_angle) {
        const double m2 = m * m;
        sinc = 1.0 - m2 / 6.0 + m2 * m2 / 120.0;
    } else {
        sinc = std::sin(m) / m;
    }
    return Quaternion{ea * std::cos(m), 0, 0, 0} + v * (ea * sinc);
}

struct PolarForm {
    double magnitude;
    Axis axis;
    double angle;  // in [0, pi]
};

// q = magnitude * e^{axis*angle}.  Real q has no preferred axis; the
// canonical choice is i with angle 0 (positive) or pi (negative).
inline PolarForm polar(const Quaternion& q) {
    const double mag = norm(q);
    if (mag == 0.0) throw std::domain_error("polar form of zero quaternion");
    const Quaternion v = vector_part(q);
    const double vm = norm(v);
    if (vm < tol::axis_min_norm * mag)
        return {mag, Axis::i(), q.w > 0 ? 0.0 : std::acos(-1.0)};
    return {mag, Axis{v}, std::atan2(vm, q.w)};
}

// p q p~ for unit p; preserves |q| and the scalar part of q.
inline Quaternion rotate(const Quaternion& p, const Quaternion& q) {
    if (std::abs(norm(p) - 1.0) > tol::unit_quaternion)
        throw std::domain_error("rotate requires a unit quaternion");
    return p * q * conj(p);
}

struct SymplecticSplit {
    Quaternion parallel;  // in span{1, mu1}
    Quaternion perp;      // in span{mu2, mu1*mu2}
};

// q = parallel + perp over the orthonormal frame {1, mu1, mu2, mu1*mu2}.
// parallel commutes with mu1; perp conjugate-commutes (s q_perp = q_perp s~
// for simplex s).
inline SymplecticSplit symplectic_split(const Quaternion& q, const Axis& mu1, const Axis& mu2) {
    if (std::abs(dot(mu1, mu2)) > tol::axis_orthogonal)
        throw std::domain_error("symplectic_split requires orthogonal axes");
    const Quaternion m1 = mu1.direction();
    const Quaternion m2 = mu2.direction();
    const Quaternion m3 = m1 * m2;
    const double p0 = q.w;
    const double p1 = dot(q, m1);
    const double p2 = dot(q, m2);
    const double p3 = dot(q, m3);
    return {Quaternion{p0, 0, 0, 0} + m1 * p1, m2 * p2 + m3 * p3};
}

inline Quaternion simplex_part(const Quaternion& q, const Axis& mu1, const Axis& mu2) {
    return symplectic_split(q, mu1, mu2).parallel;
}

inline Quaternion perplex_part(const Quaternion& q, const Axis& mu1, const Axis& mu2) {
    return symplectic_split(q, mu1, mu2).perp;
}

// Unit p with p nu p~ = mu.  The rotation axis is V(nu) x V(mu), written
// below as nu*mu + V(nu).V(mu); the angle is arccos(V(mu).V(nu)).
inline Quaternion axis_rotation_between(const Axis& mu, const Axis& nu) {
    const double c = dot(mu, nu);
    if (std::abs(c) > 1.0 - tol::collinear)
        throw std::domain_error("axes are collinear; use identity or conjugation");
    const Quaternion xi_raw = nu.direction() * mu.direction() + Quaternion{c, 0, 0, 0};
    const Axis xi{xi_raw};
    const double theta = std::acos(std::clamp(c, -1.0, 1.0));
    return qexp(xi.direction() * (theta / 2.0));
}

}  // namespace quatspec
