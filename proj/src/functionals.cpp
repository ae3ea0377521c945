#include "loopforest/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "loopforest/predicates.hpp"

namespace loopforest {

Functional functional_from_name(std::string_view name) {
  if (name == "const") return Functional::constant;
  if (name == "length" || name == "volume") return Functional::volume;
  if (name == "area" || name == "enclosed-volume") return Functional::enclosed_volume;
  if (name == "excess-curvature") return Functional::excess_curvature;
  if (name == "excess-components") return Functional::excess_components;
  if (name == "iso") return Functional::isoperimetric;
  throw InputError("unknown functional '" + std::string(name) +
                   "' (expected const, length, area, excess-curvature, "
                   "excess-components or iso)");
}

std::string_view functional_name(Functional f) {
  switch (f) {
    case Functional::constant:
      return "const";
    case Functional::volume:
      return "length";
    case Functional::enclosed_volume:
      return "area";
    case Functional::excess_curvature:
      return "excess-curvature";
    case Functional::excess_components:
      return "excess-components";
    case Functional::isoperimetric:
      return "iso";
  }
  return "const";
}

bool scale_invariant(Functional) {
  // Every functional here depends on the support only.
  return true;
}

namespace {

double facet_volume(const FilteredComplex& k, FacetId f) {
  const auto verts = k.facet_vertices(f);
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  std::vector<double> coords;
  coords.reserve(verts.size() * n);
  for (auto v : verts) {
    const auto p = k.point(v);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return geometry::simplex_volume(coords, k.ambient_dim());
}

struct Directed {
  VertexId from;
  VertexId to;
};

double turning(const FilteredComplex& k, const Directed& in, const Directed& out) {
  const auto u = k.point(in.from);
  const auto v = k.point(in.to);
  const auto w = k.point(out.to);
  const double ax = v[0] - u[0], ay = v[1] - u[1];
  const double bx = w[0] - v[0], by = w[1] - v[1];
  return std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
}

// Splits a balanced multiset of directed edges into closed curves: fewest
// curves first, then least total turning.
class CurveDecomposition {
 public:
  CurveDecomposition(const FilteredComplex& k, std::vector<Directed> edges)
      : k_(k), edges_(std::move(edges)) {}

  CurvatureValue run() {
    if (edges_.empty()) return {0.0, true};
    // Local vertex numbering: the endpoints of the chain, sorted.
    for (const auto& e : edges_) {
      vertices_.push_back(e.from);
      vertices_.push_back(e.to);
    }
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    auto local = [&](VertexId v) {
      return static_cast<std::int32_t>(std::lower_bound(vertices_.begin(), vertices_.end(), v) -
                                       vertices_.begin());
    };
    const auto nv = static_cast<std::int32_t>(vertices_.size());
    in_.assign(nv, {});
    out_.assign(nv, {});
    head_.resize(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      head_[i] = local(edges_[i].to);
      out_[local(edges_[i].from)].push_back(static_cast<std::int32_t>(i));
      in_[head_[i]].push_back(static_cast<std::int32_t>(i));
    }
    bool small = true;
    for (std::int32_t v = 0; v < nv; ++v) {
      if (in_[v].size() != out_[v].size()) {
        throw FunctionalError("chain is not a cycle: vertex " + std::to_string(vertices_[v]) +
                              " has " + std::to_string(in_[v].size()) + " incoming and " +
                              std::to_string(out_[v].size()) + " outgoing edges");
      }
      if (in_[v].size() >= 2) {
        branch_.push_back(v);
        if (in_[v].size() > 3) small = false;
      }
    }
    if (branch_.size() > 8) small = false;
    return small ? exhaustive() : greedy();
  }

 private:
  // Forced successor of an in-edge at a vertex with one in and one out edge.
  double forced_cost(std::int32_t in_edge) const {
    return turning(k_, edges_[in_edge], edges_[out_[head_[in_edge]][0]]);
  }

  CurvatureValue finish(std::size_t curves, double total) const {
    return {total / (2.0 * std::numbers::pi) - static_cast<double>(curves), true};
  }

  CurvatureValue exhaustive() {
    // Collapse degree-2 runs: a super-edge starts with an out-edge of a
    // branch vertex and ends with the in-edge reaching the next one.
    std::vector<char> used(edges_.size(), 0);
    std::vector<std::int32_t> branch_index(in_.size(), -1);
    for (std::size_t i = 0; i < branch_.size(); ++i) branch_index[branch_[i]] = static_cast<std::int32_t>(i);

    std::vector<std::int32_t> super_of_out(edges_.size(), -1);
    std::vector<std::int32_t> super_end(0);  // in-edge ending each super-edge
    double fixed = 0.0;
    for (auto b : branch_) {
      for (auto e : out_[b]) {
        const auto s = static_cast<std::int32_t>(super_end.size());
        super_of_out[e] = s;
        std::int32_t cur = e;
        used[cur] = 1;
        while (branch_index[head_[cur]] < 0) {
          fixed += forced_cost(cur);
          cur = out_[head_[cur]][0];
          used[cur] = 1;
        }
        super_end.push_back(cur);
      }
    }
    std::size_t loose_cycles = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (used[e]) continue;
      ++loose_cycles;
      std::int32_t cur = static_cast<std::int32_t>(e);
      while (!used[cur]) {
        used[cur] = 1;
        fixed += forced_cost(cur);
        cur = out_[head_[cur]][0];
      }
    }

    // Pairings per branch vertex: permutations of its out-edges, matched to
    // its in-edges in order.
    const std::size_t nb = branch_.size();
    std::vector<std::vector<std::vector<std::int32_t>>> options(nb);
    std::vector<std::vector<double>> option_cost(nb);
    for (std::size_t i = 0; i < nb; ++i) {
      const auto v = branch_[i];
      std::vector<std::int32_t> perm = out_[v];
      std::sort(perm.begin(), perm.end());
      do {
        double cost = 0.0;
        for (std::size_t j = 0; j < perm.size(); ++j) {
          cost += turning(k_, edges_[in_[v][j]], edges_[perm[j]]);
        }
        options[i].push_back(perm);
        option_cost[i].push_back(cost);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }

    const std::size_t ns = super_end.size();
    std::vector<std::int32_t> next(ns);
    std::vector<std::size_t> choice(nb, 0);
    std::vector<char> seen(ns);
    std::size_t best_curves = std::numeric_limits<std::size_t>::max();
    double best_cost = std::numeric_limits<double>::infinity();
    while (true) {
      double cost = 0.0;
      for (std::size_t i = 0; i < nb; ++i) cost += option_cost[i][choice[i]];
      for (std::size_t s = 0; s < ns; ++s) {
        const auto in_edge = super_end[s];
        const auto bi = branch_index[head_[in_edge]];
        const auto& ins = in_[head_[in_edge]];
        const auto slot = std::find(ins.begin(), ins.end(), in_edge) - ins.begin();
        next[s] = super_of_out[options[bi][choice[bi]][slot]];
      }
      std::fill(seen.begin(), seen.end(), 0);
      std::size_t curves = 0;
      for (std::size_t s = 0; s < ns; ++s) {
        if (seen[s]) continue;
        ++curves;
        for (auto c = static_cast<std::int32_t>(s); !seen[c]; c = next[c]) seen[c] = 1;
      }
      if (curves < best_curves || (curves == best_curves && cost < best_cost)) {
        best_curves = curves;
        best_cost = cost;
      }
      std::size_t i = 0;
      while (i < nb && ++choice[i] == options[i].size()) choice[i++] = 0;
      if (i == nb) break;
    }
    return finish(best_curves + loose_cycles, best_cost + fixed);
  }

  CurvatureValue greedy() {
    std::vector<std::int32_t> next(edges_.size(), -1);
    std::vector<char> out_taken(edges_.size(), 0);
    double total = 0.0;
    for (std::size_t v = 0; v < in_.size(); ++v) {
      const auto& ins = in_[v];
      const auto& outs = out_[v];
      struct Pair {
        double cost;
        std::int32_t in, out;
      };
      std::vector<Pair> pairs;
      for (auto a : ins) {
        for (auto b : outs) pairs.push_back({turning(k_, edges_[a], edges_[b]), a, b});
      }
      std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return x.cost != y.cost ? x.cost < y.cost : (x.in != y.in ? x.in < y.in : x.out < y.out);
      });
      for (const auto& p : pairs) {
        if (next[p.in] >= 0 || out_taken[p.out]) continue;
        next[p.in] = p.out;
        out_taken[p.out] = 1;
        total += p.cost;
      }
    }
    std::vector<char> seen(edges_.size(), 0);
    std::size_t curves = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (seen[e]) continue;
      ++curves;
      for (auto c = static_cast<std::int32_t>(e); !seen[c]; c = next[c]) seen[c] = 1;
    }
    auto r = finish(curves, total);
    r.exact = false;
    return r;
  }

  const FilteredComplex& k_;
  std::vector<Directed> edges_;
  std::vector<VertexId> vertices_;  // local id -> vertex
  std::vector<std::int32_t> head_;  // local id of each edge's target
  std::vector<std::vector<std::int32_t>> in_, out_;
  std::vector<std::int32_t> branch_;
};

void require_planar(const FilteredComplex& k) {
  if (k.ambient_dim() != 2) {
    throw FunctionalError("excess curvature needs planar cycles (ambient dimension 2), got " +
                          std::to_string(k.ambient_dim()));
  }
}

}  // namespace

double vol(const FilteredComplex& k, const SignedChain& z) {
  double s = 0.0;
  for (auto f : z.plus) s += facet_volume(k, f);
  for (auto f : z.minus) s += facet_volume(k, f);
  return s;
}

double vol(const FilteredComplex& k, const Chain& z) {
  double s = 0.0;
  for (const auto& [f, c] : z.coeffs) s += facet_volume(k, f);
  return s;
}

std::vector<double> top_volumes(const FilteredComplex& k) {
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  std::vector<double> out(k.num_tops());
  std::vector<double> coords((n + 1) * n);
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
    const auto verts = k.top_vertices(t);
    for (std::size_t i = 0; i <= n; ++i) {
      const auto p = k.point(verts[i]);
      std::copy(p.begin(), p.end(), coords.begin() + i * n);
    }
    out[t] = geometry::simplex_volume(coords, k.ambient_dim());
  }
  return out;
}

double evol(const FilteredComplex& k, std::span<const TopId> interior) {
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  std::vector<double> coords((n + 1) * n);
  double s = 0.0;
  for (auto t : interior) {
    const auto verts = k.top_vertices(t);
    for (std::size_t i = 0; i <= n; ++i) {
      const auto p = k.point(verts[i]);
      std::copy(p.begin(), p.end(), coords.begin() + i * n);
    }
    s += geometry::simplex_volume(coords, k.ambient_dim());
  }
  return s;
}

CurvatureValue excess_curvature(const FilteredComplex& k, const SignedChain& z) {
  require_planar(k);
  std::vector<Directed> edges;
  for (auto f : z.plus) {
    const auto v = k.facet_vertices(f);
    edges.push_back({v[0], v[1]});
  }
  for (auto f : z.minus) {
    const auto v = k.facet_vertices(f);
    edges.push_back({v[1], v[0]});
  }
  return CurveDecomposition(k, std::move(edges)).run();
}

CurvatureValue excess_curvature(const FilteredComplex& k, const Chain& z) {
  require_planar(k);
  std::vector<Directed> edges;
  for (const auto& [f, c] : z.coeffs) {
    const auto v = k.facet_vertices(f);
    for (std::int64_t i = 0; i < std::abs(c); ++i) {
      edges.push_back(c > 0 ? Directed{v[0], v[1]} : Directed{v[1], v[0]});
    }
  }
  return CurveDecomposition(k, std::move(edges)).run();
}

double excess_components(const FilteredComplex& k, const SignedChain& z) {
  const auto s = support(z);
  return s.empty() ? 0.0 : static_cast<double>(count_components(k, s)) - 1.0;
}

double excess_components(const FilteredComplex& k, const Chain& z) {
  const auto s = support(z);
  return s.empty() ? 0.0 : static_cast<double>(count_components(k, s)) - 1.0;
}

double const_one() { return 1.0; }

template <class C>
FunctionalEvaluator<C>::FunctionalEvaluator(const FilteredComplex& k, const BasicForest<C>& f)
    : k_(k), f_(f), cache_(6) {}

template <class C>
double FunctionalEvaluator<C>::operator()(Functional fn, std::int32_t vertex) {
  auto& cache = cache_[static_cast<std::size_t>(fn)];
  if (cache.empty()) cache.assign(f_.size(), std::numeric_limits<double>::quiet_NaN());
  double& slot = cache[vertex];
  if (!std::isnan(slot)) return slot;
  const C& z = f_.chain(vertex);
  auto enclosed = [&] {
    if (enclosed_.empty()) enclosed_ = interior_weights(f_, top_volumes(k_));
    return enclosed_[vertex];
  };
  switch (fn) {
    case Functional::constant:
      slot = const_one();
      break;
    case Functional::volume:
      slot = vol(k_, z);
      break;
    case Functional::enclosed_volume:
      slot = enclosed();
      break;
    case Functional::excess_curvature: {
      const auto r = excess_curvature(k_, z);
      if (!r.exact) approximate_ = true;
      slot = r.value;
      break;
    }
    case Functional::excess_components:
      slot = excess_components(k_, z);
      break;
    case Functional::isoperimetric: {
      const double area = enclosed();
      if (!(area > 0.0)) {
        throw FunctionalError("isoperimetric ratio of a cycle with empty interior");
      }
      const double length = vol(k_, z);
      slot = length * length / area - 4.0 * std::numbers::pi;
      break;
    }
  }
  return slot;
}

template <class C>
StepFunction step_function(FunctionalEvaluator<C>& eval, Functional fn,
                           const CycleProgression<C>& gamma) {
  StepFunction out;
  out.reserve(gamma.steps.size());
  for (auto it = gamma.steps.rbegin(); it != gamma.steps.rend(); ++it) {
    out.push_back({it->from, it->to, eval(fn, it->vertex)});
  }
  return out;
}

template class FunctionalEvaluator<SignedChain>;
template class FunctionalEvaluator<Chain>;
template StepFunction step_function(FunctionalEvaluator<SignedChain>&, Functional,
                                    const CycleProgression<SignedChain>&);
template StepFunction step_function(FunctionalEvaluator<Chain>&, Functional,
                                    const CycleProgression<Chain>&);

}  // namespace loopforest
