#pragma once

// All numeric tolerances used across the library, in one place.
// Pure algebra gets the tightest bound; composed operations (transforms,
// eigen-residuals, oracle comparisons) get progressively looser ones.

namespace quatspec::tol {

inline constexpr double algebra = 1e-12;      // single quaternion operations
inline constexpr double round_trip = 1e-10;   // polar/adjoint/spectrum round trips
inline constexpr double unitary = 1e-10;      // ||Q^H Q - I||_inf for N <= 64
inline constexpr double composed = 1e-9;      // eigen-residuals, multi-step identities
inline constexpr double hermitian_block = 1e-10;  // Xi block Hermitian symmetry
inline constexpr double fast_path = 1e-8;     // fast transform vs direct evaluation
inline constexpr double oracle_rel = 1e-7;    // Xi-derived sigma vs brute-force QSVD
inline constexpr double clip_inflate = 1e-6;  // allowed overshoot factor on clip output
inline constexpr double witness = 1e-8;       // rank-deficiency certificates
inline constexpr double axis_min_norm = 1e-12;   // smallest vector part accepted as an axis
inline constexpr double axis_orthogonal = 1e-9;  // dot bound for "perpendicular" axes
inline constexpr double unit_quaternion = 1e-9;  // |p| = 1 check for rotations
inline constexpr double collinear = 1e-9;     // 1 - |dot| bound for "non-collinear" axes
inline constexpr double tiny_angle = 1e-8;    // switch to series for sin|v|/|v|
inline constexpr double sigma_group_rel = 1e-8;  // pairing tolerance for doubled spectra
inline constexpr double singular = 1e-10;     // operator treated as singular below this

}  // namespace quatspec::tol
