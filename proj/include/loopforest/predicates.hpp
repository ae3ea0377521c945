#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace loopforest::geometry {

using Vec2 = std::array<double, 2>;

/// Sign of det(b - a, c - a): +1 if a, b, c turn counter-clockwise, -1 if
/// clockwise, 0 if collinear. Exact: a floating-point filter decides the
/// easy cases and rational arithmetic settles the rest.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// Sign of the lifted 4x4 determinant with rows (x, y, x^2 + y^2, 1) for
/// a, b, c, d. For counter-clockwise a, b, c the result is +1 iff d lies
/// strictly inside their circumcircle. Exact; may return 0 on cocircular
/// input.
int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// incircle() with cocircular ties resolved by symbolic perturbation of the
/// lifted coordinate: point with index i is lifted by eps^(i + 1), so the
/// lowest index dominates. Never returns 0 unless all four points are
/// collinear.
int incircle_perturbed(const Vec2& a, const Vec2& b, const Vec2& c,
                       const Vec2& d, std::array<std::int64_t, 4> index);

/// Sign of det(p_1 - p_0, ..., p_k - p_0) for k + 1 points in R^k, given as
/// a row-major array of (k + 1) * k coordinates. Exact.
int orientation_sign(std::span<const double> coords, int dim);

/// Unsigned k-volume of a k-simplex in R^n, i.e. sqrt(det G) / k! with G the
/// Gram matrix of the edge vectors from the first vertex. Vertices are given
/// as (k + 1) rows of n coordinates.
double simplex_volume(std::span<const double> coords, int ambient_dim);

}  // namespace loopforest::geometry
