#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "loopforest/delaunay.hpp"

namespace loopforest {

using VertexId = std::int32_t;
/// Index of a codimension-one simplex (dimension d) in a FilteredComplex.
using FacetId = std::int32_t;
/// Index of a top-dimensional simplex (dimension d + 1).
using TopId = std::int32_t;

/// A simplex as handed to FilteredComplex::build: vertex ids in any order
/// and a filtration value.
struct SimplexSpec {
  std::vector<VertexId> vertices;
  double filtration = 0.0;
};

/// Reference into the event order: either a facet or a top simplex.
struct SimplexRef {
  bool top = false;
  std::int32_t index = 0;

  friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
};

/// A filtered simplicial complex embedded in R^(d+1), reduced to the two
/// dimensions the persistence forest needs: the d-simplices ("facets") and
/// the (d+1)-simplices ("tops").
///
/// Ids are canonical: within each dimension simplices are sorted by
/// (filtration, vertex ids). The same complex therefore gets the same ids no
/// matter how its simplex lists were ordered on input.
///
/// Immutable after build(); safe to share read-only between threads.
class FilteredComplex {
 public:
  /// Validates and indexes a complex. `lower` holds optional simplices of
  /// dimension < d from the input; they only take part in the Euler
  /// characteristic and connectivity checks.
  ///
  /// Throws ValidationError naming the violated invariant: non-finite
  /// coordinate or filtration, malformed simplex, duplicate simplex, missing
  /// facet of a top simplex, facet with more than two cofaces (or none),
  /// non-monotone filtration, degenerate top simplex, disconnected complex,
  /// Euler characteristic != 1.
  static FilteredComplex build(int ambient_dim, std::vector<double> coords,
                               std::vector<SimplexSpec> facets,
                               std::vector<SimplexSpec> tops,
                               std::span<const SimplexSpec> lower = {});

  int ambient_dim() const { return ambient_dim_; }
  /// d: dimension of the facets.
  int facet_dim() const { return ambient_dim_ - 1; }
  std::size_t num_points() const { return coords_.size() / ambient_dim_; }
  std::size_t num_facets() const { return facet_filtration_.size(); }
  std::size_t num_tops() const { return top_filtration_.size(); }

  std::span<const double> point(VertexId v) const {
    return {coords_.data() + static_cast<std::size_t>(v) * ambient_dim_,
            static_cast<std::size_t>(ambient_dim_)};
  }
  std::span<const double> coords() const { return coords_; }

  /// Sorted vertex ids of a facet (d + 1 of them).
  std::span<const VertexId> facet_vertices(FacetId f) const {
    return {facet_vertices_.data() + static_cast<std::size_t>(f) * ambient_dim_,
            static_cast<std::size_t>(ambient_dim_)};
  }
  /// Sorted vertex ids of a top simplex (d + 2 of them).
  std::span<const VertexId> top_vertices(TopId t) const {
    return {top_vertices_.data() + static_cast<std::size_t>(t) * (ambient_dim_ + 1),
            static_cast<std::size_t>(ambient_dim_ + 1)};
  }
  /// faces(t)[i] is the facet obtained by dropping the i-th vertex of t.
  std::span<const FacetId> faces(TopId t) const {
    return {top_faces_.data() + static_cast<std::size_t>(t) * (ambient_dim_ + 1),
            static_cast<std::size_t>(ambient_dim_ + 1)};
  }
  /// One or two top simplices containing the facet.
  std::span<const TopId> cofaces(FacetId f) const {
    const auto& c = cofaces_[f];
    return {c.data(), c[1] < 0 ? (c[0] < 0 ? 0u : 1u) : 2u};
  }

  double facet_filtration(FacetId f) const { return facet_filtration_[f]; }
  double top_filtration(TopId t) const { return top_filtration_[t]; }
  double filtration(SimplexRef s) const {
    return s.top ? top_filtration_[s.index] : facet_filtration_[s.index];
  }
  /// Orientation sign of a top simplex: sgn det(v1 - v0, ..., v_{d+1} - v0)
  /// for its vertices in ascending id order.
  int orientation(TopId t) const { return orientation_[t]; }

  /// Lookup of a facet by its vertex set (any order). Returns -1 if absent.
  FacetId find_facet(std::span<const VertexId> vertices) const;

 private:
  FilteredComplex() = default;

  int ambient_dim_ = 0;
  std::vector<double> coords_;
  std::vector<VertexId> facet_vertices_;
  std::vector<double> facet_filtration_;
  std::vector<VertexId> top_vertices_;
  std::vector<double> top_filtration_;
  std::vector<FacetId> top_faces_;
  std::vector<std::array<TopId, 2>> cofaces_;
  std::vector<std::int8_t> orientation_;
  // Facet ids sorted by vertex tuple.
  std::vector<FacetId> facet_lookup_;
};

/// Delaunay-based alpha filtration of a planar point set. Triangles get
/// their squared circumradius; an edge gets its squared half-length if no
/// opposite vertex of its cofaces lies strictly inside its diametral disk
/// (Gabriel), otherwise the smallest value of its cofaces.
FilteredComplex alpha_filtration(const Triangulation& tri,
                                 std::span<const geometry::Vec2> points);

/// The simplices of dimension d and d + 1 in the order the persistence
/// forest consumes them (reversed): ascending by (filtration, dimension,
/// vertex ids), so every face precedes its cofaces.
std::vector<SimplexRef> event_order(const FilteredComplex& complex);

}  // namespace loopforest
