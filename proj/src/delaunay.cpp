#include "loopforest/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "loopforest/errors.hpp"

namespace loopforest {

namespace {

using geometry::Vec2;
using geometry::incircle_perturbed;
using geometry::orient2d;

constexpr std::int32_t kGhost = -1;

struct Tri {
  std::array<std::int32_t, 3> v;
  // n[i] is the neighbour across the edge opposite v[i].
  std::array<std::int32_t, 3> n;
};

std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << (order - 1); s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

class Builder {
 public:
  explicit Builder(std::span<const Vec2> pts)
      : pts_(pts), edge_start_(pts.size() + 1, -1) {}

  Triangulation run() {
    const auto order = insertion_order();
    seed(order);
    for (std::int32_t p : order) {
      if (p == seed_[0] || p == seed_[1] || p == seed_[2]) continue;
      insert(p);
    }
    Triangulation out;
    out.reserve(tris_.size() / 2);
    for (const Tri& t : tris_) {
      if (t.v[0] != kGhost && t.v[1] != kGhost && t.v[2] != kGhost) {
        out.push_back(t.v);
      }
    }
    return out;
  }

 private:
  std::vector<std::int32_t> insertion_order() const {
    double xmin = pts_[0][0], xmax = xmin, ymin = pts_[0][1], ymax = ymin;
    for (const Vec2& p : pts_) {
      xmin = std::min(xmin, p[0]);
      xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]);
      ymax = std::max(ymax, p[1]);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
    constexpr int kOrder = 16;
    const double scale = static_cast<double>((1u << kOrder) - 1) / span;
    std::vector<std::uint64_t> key(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const auto x = static_cast<std::uint32_t>((pts_[i][0] - xmin) * scale);
      const auto y = static_cast<std::uint32_t>((pts_[i][1] - ymin) * scale);
      key[i] = hilbert_index(x, y, kOrder);
    }
    std::vector<std::int32_t> order(pts_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
      return key[a] != key[b] ? key[a] < key[b] : a < b;
    });
    return order;
  }

  void seed(const std::vector<std::int32_t>& order) {
    const std::int32_t p0 = order[0];
    const std::int32_t p1 = order[1];
    std::int32_t p2 = -1;
    for (std::size_t i = 2; i < order.size(); ++i) {
      if (orient2d(pts_[p0], pts_[p1], pts_[order[i]]) != 0) {
        p2 = order[i];
        break;
      }
    }
    if (p2 < 0) throw AllCollinearError();
    std::int32_t a = p0, b = p1, c = p2;
    if (orient2d(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    seed_ = {a, b, c};
    tris_ = {Tri{{a, b, c}, {-1, -1, -1}}, Tri{{b, a, kGhost}, {-1, -1, -1}},
             Tri{{c, b, kGhost}, {-1, -1, -1}}, Tri{{a, c, kGhost}, {-1, -1, -1}}};
    // Wire neighbours by matching reversed directed edges.
    for (std::int32_t s = 0; s < 4; ++s) {
      for (int i = 0; i < 3; ++i) {
        const std::int32_t u = tris_[s].v[(i + 1) % 3];
        const std::int32_t w = tris_[s].v[(i + 2) % 3];
        for (std::int32_t r = 0; r < 4; ++r) {
          if (r == s) continue;
          for (int j = 0; j < 3; ++j) {
            if (tris_[r].v[(j + 1) % 3] == w && tris_[r].v[(j + 2) % 3] == u) {
              tris_[s].n[i] = r;
            }
          }
        }
      }
    }
    last_ = 0;
  }

  static int ghost_slot(const Tri& t) {
    for (int i = 0; i < 3; ++i) {
      if (t.v[i] == kGhost) return i;
    }
    return -1;
  }

  bool lex_less(std::int32_t a, std::int32_t b) const {
    return pts_[a] < pts_[b];
  }

  bool in_circle(std::int32_t t, std::int32_t p) const {
    const Tri& tri = tris_[t];
    const int g = ghost_slot(tri);
    if (g >= 0) {
      const std::int32_t a = tri.v[(g + 1) % 3];
      const std::int32_t b = tri.v[(g + 2) % 3];
      const int o = orient2d(pts_[a], pts_[b], pts_[p]);
      if (o != 0) return o > 0;
      // Collinear with a hull edge: inside iff strictly between a and b.
      const auto lo = lex_less(a, b) ? a : b;
      const auto hi = lex_less(a, b) ? b : a;
      return lex_less(lo, p) && lex_less(p, hi);
    }
    return incircle_perturbed(pts_[tri.v[0]], pts_[tri.v[1]], pts_[tri.v[2]],
                              pts_[p], {tri.v[0], tri.v[1], tri.v[2], p}) > 0;
  }

  std::int32_t locate(std::int32_t p) const {
    std::int32_t t = last_;
    if (ghost_slot(tris_[t]) >= 0) t = tris_[t].n[ghost_slot(tris_[t])];
    const std::size_t cap = 4 * tris_.size() + 16;
    for (std::size_t steps = 0; steps < cap; ++steps) {
      const Tri& tri = tris_[t];
      if (ghost_slot(tri) >= 0) return t;
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>((steps + k) % 3);
        if (orient2d(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]],
                     pts_[p]) < 0) {
          t = tri.n[i];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // Walk did not settle; fall back to a scan.
    for (std::int32_t s = 0; s < static_cast<std::int32_t>(tris_.size()); ++s) {
      if (in_circle(s, p)) return s;
    }
    return 0;
  }

  void insert(std::int32_t p) {
    const std::int32_t start = locate(p);
    ++stamp_;
    if (state_.size() < tris_.size()) state_.resize(tris_.size(), 0);
    bad_.clear();
    bad_.push_back(start);
    state_[start] = 2 * stamp_;
    for (std::size_t k = 0; k < bad_.size(); ++k) {
      const Tri tri = tris_[bad_[k]];
      for (std::int32_t nb : tri.n) {
        if (state_[nb] >= 2 * stamp_) continue;
        if (in_circle(nb, p)) {
          state_[nb] = 2 * stamp_;
          bad_.push_back(nb);
        } else {
          state_[nb] = 2 * stamp_ + 1;
        }
      }
    }

    boundary_.clear();
    for (std::int32_t t : bad_) {
      const Tri& tri = tris_[t];
      for (int i = 0; i < 3; ++i) {
        const std::int32_t nb = tri.n[i];
        if (state_[nb] == 2 * stamp_) continue;
        int back = 0;
        while (tris_[nb].n[back] != t) ++back;
        boundary_.push_back(
            {tri.v[(i + 1) % 3], tri.v[(i + 2) % 3], nb, back});
      }
    }

    slots_.assign(bad_.begin(), bad_.end());
    while (slots_.size() < boundary_.size()) {
      slots_.push_back(static_cast<std::int32_t>(tris_.size()));
      tris_.push_back({});
    }
    state_.resize(tris_.size(), 0);

    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      const auto& e = boundary_[k];
      const std::int32_t s = slots_[k];
      tris_[s] = Tri{{e.u, e.w, p}, {-1, -1, e.outer}};
      tris_[e.outer].n[e.back] = s;
      edge_start_[e.u + 1] = s;
    }
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      const std::int32_t s = slots_[k];
      const std::int32_t w = tris_[s].v[1];
      const std::int32_t next = edge_start_[w + 1];
      tris_[s].n[0] = next;
      tris_[next].n[1] = s;
      state_[s] = 0;
    }
    last_ = slots_.front();
  }

  std::span<const Vec2> pts_;
  std::vector<Tri> tris_;
  std::array<std::int32_t, 3> seed_{};
  std::int32_t last_ = 0;
  std::int64_t stamp_ = 0;
  std::vector<std::int64_t> state_;
  std::vector<std::int32_t> bad_;
  std::vector<std::int32_t> slots_;
  // Cavity boundary edge starting at vertex u (slot u + 1; ghost at 0).
  std::vector<std::int32_t> edge_start_;
  struct BoundaryEdge {
    std::int32_t u, w, outer;
    int back;
  };
  std::vector<BoundaryEdge> boundary_;
};

}  // namespace

Triangulation delaunay_2d(std::span<const geometry::Vec2> points) {
  if (points.size() < 3) {
    throw ValidationError("delaunay_2d needs at least 3 points, got " +
                          std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i][0]) || !std::isfinite(points[i][1])) {
      throw ValidationError("non-finite coordinate at point " +
                            std::to_string(i));
    }
  }
  std::vector<std::int32_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::int32_t a, std::int32_t b) {
    return points[a] != points[b] ? points[a] < points[b] : a < b;
  });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (points[idx[i]] == points[idx[i - 1]]) {
      throw DuplicatePointsError("duplicate points " + std::to_string(idx[i - 1]) +
                                 " and " + std::to_string(idx[i]));
    }
  }
  return Builder(points).run();
}

}  // namespace loopforest
