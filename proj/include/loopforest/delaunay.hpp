#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "loopforest/predicates.hpp"

namespace loopforest {

/// Triangles as counter-clockwise vertex-index triples.
using Triangulation = std::vector<std::array<std::int32_t, 3>>;

/// Delaunay triangulation of a planar point set.
///
/// Incremental Bowyer-Watson over a triangulation of the sphere: the outer
/// face is covered by "ghost" triangles sharing a vertex at infinity, so no
/// super-triangle coordinates ever enter a predicate. Points are inserted in
/// Hilbert-curve order and located by a visibility walk from the last
/// inserted triangle.
///
/// Predicates are exact. Cocircular configurations are resolved by lifting
/// point i by eps^(i + 1) onto the paraboloid, which makes the result
/// unique and independent of insertion order.
///
/// Throws DuplicatePointsError, AllCollinearError, or ValidationError (fewer
/// than three points, non-finite coordinates).
Triangulation delaunay_2d(std::span<const geometry::Vec2> points);

}  // namespace loopforest
