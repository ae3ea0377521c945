#include "loopforest/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "loopforest/errors.hpp"
#include "loopforest/predicates.hpp"

namespace loopforest {

namespace {

std::string tuple_str(std::span<const VertexId> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

// Sorts the vertex lists of `specs` in place and checks their shape.
void canonicalize(std::vector<SimplexSpec>& specs, std::size_t size,
                  std::size_t num_points, const char* what) {
  for (auto& s : specs) {
    if (s.vertices.size() != size) {
      throw ValidationError(std::string(what) + " " + tuple_str(s.vertices) +
                            " has " + std::to_string(s.vertices.size()) +
                            " vertices, expected " + std::to_string(size));
    }
    std::sort(s.vertices.begin(), s.vertices.end());
    for (std::size_t i = 0; i < size; ++i) {
      if (s.vertices[i] < 0 || static_cast<std::size_t>(s.vertices[i]) >= num_points) {
        throw ValidationError(std::string(what) + " " + tuple_str(s.vertices) +
                              " references an unknown vertex");
      }
      if (i > 0 && s.vertices[i] == s.vertices[i - 1]) {
        throw ValidationError(std::string(what) + " " + tuple_str(s.vertices) +
                              " repeats a vertex");
      }
    }
    if (!std::isfinite(s.filtration)) {
      throw ValidationError(std::string(what) + " " + tuple_str(s.vertices) +
                            " has a non-finite filtration value");
    }
  }
  std::sort(specs.begin(), specs.end(), [](const SimplexSpec& a, const SimplexSpec& b) {
    if (a.filtration != b.filtration) return a.filtration < b.filtration;
    return a.vertices < b.vertices;
  });
}

// Flat list of fixed-size vertex tuples; deduplicated count.
std::size_t count_distinct(std::vector<VertexId>& flat, std::size_t stride) {
  const std::size_t n = flat.size() / stride;
  if (n == 0) return 0;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto at = [&](std::size_t i) {
    return std::span<const VertexId>(flat.data() + i * stride, stride);
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::ranges::lexicographical_compare(at(a), at(b));
  });
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (!std::ranges::equal(at(idx[i]), at(idx[i - 1]))) ++distinct;
  }
  return distinct;
}

// Appends every (k+1)-subset of `simplex` to `out` (lexicographic order of
// positions keeps the subsets sorted).
void append_subsets(std::span<const VertexId> simplex, std::size_t k1,
                    std::vector<VertexId>& out) {
  const std::size_t n = simplex.size();
  if (k1 > n) return;
  std::vector<std::size_t> pick(k1);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    for (std::size_t p : pick) out.push_back(simplex[p]);
    std::size_t i = k1;
    while (i > 0 && pick[i - 1] == n - k1 + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k1; ++j) pick[j] = pick[j - 1] + 1;
  }
}

struct DisjointSet {
  std::vector<std::int32_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

FilteredComplex FilteredComplex::build(int ambient_dim, std::vector<double> coords,
                                       std::vector<SimplexSpec> facets,
                                       std::vector<SimplexSpec> tops,
                                       std::span<const SimplexSpec> lower) {
  if (ambient_dim < 1) {
    throw ValidationError("ambient dimension must be at least 1");
  }
  const auto n = static_cast<std::size_t>(ambient_dim);
  if (coords.size() % n != 0) {
    throw ValidationError("coordinate count is not a multiple of the ambient dimension");
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw ValidationError("non-finite coordinate at vertex " + std::to_string(i / n));
    }
  }
  const std::size_t num_points = coords.size() / n;
  canonicalize(facets, n, num_points, "facet");
  canonicalize(tops, n + 1, num_points, "top simplex");

  FilteredComplex k;
  k.ambient_dim_ = ambient_dim;
  k.coords_ = std::move(coords);
  k.facet_vertices_.reserve(facets.size() * n);
  k.facet_filtration_.reserve(facets.size());
  for (const auto& f : facets) {
    k.facet_vertices_.insert(k.facet_vertices_.end(), f.vertices.begin(), f.vertices.end());
    k.facet_filtration_.push_back(f.filtration);
  }
  k.top_vertices_.reserve(tops.size() * (n + 1));
  k.top_filtration_.reserve(tops.size());
  for (const auto& t : tops) {
    k.top_vertices_.insert(k.top_vertices_.end(), t.vertices.begin(), t.vertices.end());
    k.top_filtration_.push_back(t.filtration);
  }
  facets.clear();
  tops.clear();

  // Facet lookup index sorted by vertex tuple; doubles as duplicate check.
  k.facet_lookup_.resize(k.num_facets());
  std::iota(k.facet_lookup_.begin(), k.facet_lookup_.end(), 0);
  std::sort(k.facet_lookup_.begin(), k.facet_lookup_.end(), [&](FacetId a, FacetId b) {
    return std::ranges::lexicographical_compare(k.facet_vertices(a), k.facet_vertices(b));
  });
  for (std::size_t i = 1; i < k.facet_lookup_.size(); ++i) {
    if (std::ranges::equal(k.facet_vertices(k.facet_lookup_[i]),
                           k.facet_vertices(k.facet_lookup_[i - 1]))) {
      throw ValidationError("duplicate facet " +
                            tuple_str(k.facet_vertices(k.facet_lookup_[i])));
    }
  }
  {
    std::vector<TopId> order(k.num_tops());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](TopId a, TopId b) {
      return std::ranges::lexicographical_compare(k.top_vertices(a), k.top_vertices(b));
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (std::ranges::equal(k.top_vertices(order[i]), k.top_vertices(order[i - 1]))) {
        throw ValidationError("duplicate top simplex " +
                              tuple_str(k.top_vertices(order[i])));
      }
    }
  }

  // Faces, cofaces, monotonicity.
  k.top_faces_.resize(k.num_tops() * (n + 1));
  k.cofaces_.assign(k.num_facets(), {-1, -1});
  std::vector<VertexId> face(n);
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
    const auto verts = k.top_vertices(t);
    for (std::size_t i = 0; i <= n; ++i) {
      std::size_t w = 0;
      for (std::size_t j = 0; j <= n; ++j) {
        if (j != i) face[w++] = verts[j];
      }
      const FacetId f = k.find_facet(face);
      if (f < 0) {
        throw ValidationError("facet " + tuple_str(face) + " of top simplex " +
                              tuple_str(verts) + " is missing");
      }
      k.top_faces_[t * (n + 1) + i] = f;
      auto& c = k.cofaces_[f];
      if (c[0] < 0) {
        c[0] = t;
      } else if (c[1] < 0) {
        c[1] = t;
      } else {
        throw ValidationError("facet " + tuple_str(face) +
                              " has more than two cofaces");
      }
      if (k.facet_filtration_[f] > k.top_filtration_[t]) {
        throw ValidationError("non-monotone filtration: facet " + tuple_str(face) +
                              " enters after its coface " + tuple_str(verts));
      }
    }
  }
  if (k.num_tops() > 0) {
    for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
      if (k.cofaces_[f][0] < 0) {
        throw ValidationError("facet " + tuple_str(k.facet_vertices(f)) +
                              " has no coface");
      }
    }
  }

  // Orientation.
  k.orientation_.resize(k.num_tops());
  std::vector<double> simplex((n + 1) * n);
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
    const auto verts = k.top_vertices(t);
    for (std::size_t i = 0; i <= n; ++i) {
      const auto p = k.point(verts[i]);
      std::copy(p.begin(), p.end(), simplex.begin() + i * n);
    }
    const int s = geometry::orientation_sign(simplex, ambient_dim);
    if (s == 0) {
      throw ValidationError("degenerate top simplex " + tuple_str(verts));
    }
    k.orientation_[t] = static_cast<std::int8_t>(s);
  }

  // Necessary conditions for contractibility: connected, Euler
  // characteristic 1. Lower-dimensional simplices are the closure of the
  // stored facets plus whatever the input listed explicitly.
  if (k.num_facets() + k.num_tops() + lower.size() > 0) {
    long long euler = 0;
    DisjointSet components(num_points);
    std::vector<char> used(num_points, 0);
    for (std::size_t dim = 0; dim + 1 < n; ++dim) {
      std::vector<VertexId> flat;
      for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
        append_subsets(k.facet_vertices(f), dim + 1, flat);
      }
      for (const auto& s : lower) {
        std::vector<VertexId> v = s.vertices;
        std::sort(v.begin(), v.end());
        for (VertexId x : v) {
          if (x < 0 || static_cast<std::size_t>(x) >= num_points) {
            throw ValidationError("simplex " + tuple_str(v) + " references an unknown vertex");
          }
        }
        append_subsets(v, dim + 1, flat);
      }
      const long long c = static_cast<long long>(count_distinct(flat, dim + 1));
      euler += (dim % 2 == 0) ? c : -c;
    }
    euler += ((n - 1) % 2 == 0) ? static_cast<long long>(k.num_facets())
                                : -static_cast<long long>(k.num_facets());
    euler += (n % 2 == 0) ? static_cast<long long>(k.num_tops())
                          : -static_cast<long long>(k.num_tops());

    auto link = [&](std::span<const VertexId> v) {
      for (VertexId x : v) used[x] = 1;
      for (std::size_t i = 1; i < v.size(); ++i) components.unite(v[0], v[i]);
    };
    for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
      link(k.facet_vertices(f));
    }
    for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) link(k.top_vertices(t));
    for (const auto& s : lower) link(s.vertices);
    std::int32_t root = -1;
    for (std::size_t v = 0; v < num_points; ++v) {
      if (!used[v]) continue;
      const auto r = components.find(static_cast<std::int32_t>(v));
      if (root < 0) root = r;
      if (r != root) throw ValidationError("complex is not connected");
    }
    if (euler != 1) {
      throw ValidationError("Euler characteristic is " + std::to_string(euler) +
                            ", expected 1 for a contractible complex");
    }
  }
  return k;
}

FacetId FilteredComplex::find_facet(std::span<const VertexId> vertices) const {
  std::vector<VertexId> key(vertices.begin(), vertices.end());
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(facet_lookup_.begin(), facet_lookup_.end(), key,
                             [&](FacetId f, const std::vector<VertexId>& k) {
                               return std::ranges::lexicographical_compare(facet_vertices(f), k);
                             });
  if (it == facet_lookup_.end() || !std::ranges::equal(facet_vertices(*it), key)) {
    return -1;
  }
  return *it;
}

FilteredComplex alpha_filtration(const Triangulation& tri,
                                 std::span<const geometry::Vec2> points) {
  std::vector<double> coords;
  coords.reserve(points.size() * 2);
  for (const auto& p : points) {
    coords.push_back(p[0]);
    coords.push_back(p[1]);
  }

  std::vector<SimplexSpec> tops;
  tops.reserve(tri.size());
  struct HalfEdge {
    VertexId a, b;  // a < b
    VertexId opposite;
    std::int32_t triangle;
  };
  std::vector<HalfEdge> half;
  half.reserve(tri.size() * 3);
  for (std::size_t t = 0; t < tri.size(); ++t) {
    const auto& v = tri[t];
    const auto& a = points[v[0]];
    const auto& b = points[v[1]];
    const auto& c = points[v[2]];
    const double ab = (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]);
    const double bc = (b[0] - c[0]) * (b[0] - c[0]) + (b[1] - c[1]) * (b[1] - c[1]);
    const double ca = (c[0] - a[0]) * (c[0] - a[0]) + (c[1] - a[1]) * (c[1] - a[1]);
    const double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    const double r2 = ab * bc * ca / (4.0 * cross * cross);
    tops.push_back({{v[0], v[1], v[2]}, r2});
    for (int i = 0; i < 3; ++i) {
      const VertexId p = v[(i + 1) % 3];
      const VertexId q = v[(i + 2) % 3];
      half.push_back({std::min(p, q), std::max(p, q), v[i], static_cast<std::int32_t>(t)});
    }
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
    return x.a != y.a ? x.a < y.a : (x.b != y.b ? x.b < y.b : x.triangle < y.triangle);
  });

  std::vector<SimplexSpec> edges;
  edges.reserve(half.size() / 2 + 1);
  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].a == half[i].a && half[j].b == half[i].b) ++j;
    const auto& p = points[half[i].a];
    const auto& q = points[half[i].b];
    bool gabriel = true;
    double coface_min = tops[half[i].triangle].filtration;
    for (std::size_t k = i; k < j; ++k) {
      const auto& o = points[half[k].opposite];
      const double dot = (p[0] - o[0]) * (q[0] - o[0]) + (p[1] - o[1]) * (q[1] - o[1]);
      if (dot < 0.0) gabriel = false;
      coface_min = std::min(coface_min, tops[half[k].triangle].filtration);
    }
    const double len2 = (p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]);
    const double value = gabriel ? std::min(len2 / 4.0, coface_min) : coface_min;
    edges.push_back({{half[i].a, half[i].b}, value});
    i = j;
  }
  return FilteredComplex::build(2, std::move(coords), std::move(edges), std::move(tops));
}

std::vector<SimplexRef> event_order(const FilteredComplex& complex) {
  std::vector<SimplexRef> order;
  order.reserve(complex.num_facets() + complex.num_tops());
  const auto nf = static_cast<std::int32_t>(complex.num_facets());
  const auto nt = static_cast<std::int32_t>(complex.num_tops());
  std::int32_t f = 0, t = 0;
  while (f < nf || t < nt) {
    if (t == nt ||
        (f < nf && complex.facet_filtration(f) <= complex.top_filtration(t))) {
      order.push_back({false, f++});
    } else {
      order.push_back({true, t++});
    }
  }
  return order;
}

}  // namespace loopforest
