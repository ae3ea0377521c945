#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "loopforest/chains.hpp"
#include "loopforest/complex.hpp"
#include "loopforest/errors.hpp"

namespace loopforest {

enum class VertexKind { leaf, merge, cancel, root };

std::string_view to_string(VertexKind kind);
VertexKind vertex_kind_from_string(std::string_view name);

/// Shape data of a forest vertex. Edges point from child to parent, i.e.
/// from larger to strictly smaller time.
struct ForestVertex {
  std::int32_t id = 0;
  double time = 0.0;
  VertexKind kind = VertexKind::leaf;
  std::int32_t parent = -1;
  std::vector<std::int32_t> children;
  /// Top simplices entering the complement at this vertex: the leaf's own
  /// simplex, plus any created at the same time and absorbed by contraction.
  std::vector<TopId> tops;
};

/// Persistence forest with chain labels of type C (SignedChain or Chain).
/// Vertex ids are dense, children have smaller ids than their parents, and
/// chains are shared between vertices that carry the same label.
template <class C>
struct BasicForest {
  std::vector<ForestVertex> vertices;
  std::vector<std::shared_ptr<const C>> chains;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }

  const ForestVertex& vertex(std::int32_t v) const {
    check(v);
    return vertices[v];
  }
  const C& chain(std::int32_t v) const {
    check(v);
    return *chains[v];
  }
  /// The representative top simplex of a leaf (smallest absorbed id), -1
  /// for other vertices.
  TopId leaf_top(std::int32_t v) const {
    check(v);
    const auto& x = vertices[v];
    return (x.children.empty() && !x.tops.empty()) ? x.tops.front() : -1;
  }
  /// (child, parent) pairs in ascending child order.
  std::vector<std::pair<std::int32_t, std::int32_t>> edges() const {
    std::vector<std::pair<std::int32_t, std::int32_t>> out;
    for (const auto& v : vertices) {
      if (v.parent >= 0) out.emplace_back(v.id, v.parent);
    }
    return out;
  }

 private:
  void check(std::int32_t v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= vertices.size()) {
      throw LookupError("unknown forest vertex " + std::to_string(v));
    }
  }
};

using PersistenceForest = BasicForest<SignedChain>;
using UnsignedForest = BasicForest<Chain>;

/// Signed persistence forest by a reverse sweep over event_order() with a
/// disjoint-set structure over the top simplices, followed by contraction of
/// equal-time edges and splitting of multi-child roots.
PersistenceForest persistence_forest(const FilteredComplex& k);

/// Same shape with every label projected to an ordinary chain.
UnsignedForest unsigned_forest(const PersistenceForest& f);

/// Sorted top simplices in the subtree below v: the interior of its chain.
template <class C>
std::vector<TopId> interior_of(const BasicForest<C>& f, std::int32_t v);

/// Sum of per-top weights over the interior of every vertex, in one
/// bottom-up pass.
template <class C>
std::vector<double> interior_weights(const BasicForest<C>& f,
                                     std::span<const double> top_weight);

/// Vertices whose chains are the live cycles at time t: time > t and a
/// parent with time <= t.
template <class C>
std::vector<std::int32_t> active_at(const BasicForest<C>& f, double t);

}  // namespace loopforest
