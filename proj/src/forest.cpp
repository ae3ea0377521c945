#include "loopforest/forest.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace loopforest {

std::string_view to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::leaf:
      return "leaf";
    case VertexKind::merge:
      return "merge";
    case VertexKind::cancel:
      return "cancel";
    case VertexKind::root:
      return "root";
  }
  return "leaf";
}

VertexKind vertex_kind_from_string(std::string_view name) {
  if (name == "leaf") return VertexKind::leaf;
  if (name == "merge") return VertexKind::merge;
  if (name == "cancel") return VertexKind::cancel;
  if (name == "root") return VertexKind::root;
  throw ParseError("unknown vertex kind '" + std::string(name) + "'");
}

namespace {

struct RawVertex {
  double time;
  std::int32_t parent = -1;
  std::vector<std::int32_t> children;
  std::vector<TopId> tops;
  std::shared_ptr<const SignedChain> chain;
};

class Sweep {
 public:
  explicit Sweep(const FilteredComplex& k)
      : k_(k),
        parent_(k.num_tops()),
        size_(k.num_tops(), 1),
        inactive_(k.num_tops(), 0),
        current_(k.num_tops(), -1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::vector<RawVertex> run() {
    const auto order = event_order(k_);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (it->top) {
        add_top(it->index);
      } else {
        add_facet(it->index);
      }
    }
    return std::move(raw_);
  }

 private:
  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::int32_t new_vertex(double time, std::shared_ptr<const SignedChain> chain) {
    raw_.push_back({time, -1, {}, {}, std::move(chain)});
    return static_cast<std::int32_t>(raw_.size() - 1);
  }

  void link(std::int32_t child, std::int32_t parent) {
    raw_[child].parent = parent;
    raw_[parent].children.push_back(child);
  }

  void add_top(TopId t) {
    const auto v = new_vertex(k_.top_filtration(t),
                              std::make_shared<const SignedChain>(signed_boundary(k_, t)));
    raw_[v].tops.push_back(t);
    current_[t] = v;
  }

  // Active component of a coface, or -1 when it has joined the unbounded one.
  std::int32_t lookup(TopId t) {
    const auto r = find(t);
    return inactive_[r] ? -1 : r;
  }

  void add_facet(FacetId sigma) {
    const auto cof = k_.cofaces(sigma);
    const double time = k_.facet_filtration(sigma);
    const std::int32_t a = cof.size() > 0 ? lookup(cof[0]) : -1;
    const std::int32_t b = cof.size() > 1 ? lookup(cof[1]) : -1;
    if (a < 0 && b < 0) return;
    if (a < 0 || b < 0) {
      const auto r = a < 0 ? b : a;
      const auto v = new_vertex(time, raw_[current_[r]].chain);
      link(current_[r], v);
      current_[r] = v;
      inactive_[r] = 1;
      return;
    }
    if (a == b) {
      const auto v = new_vertex(
          time, std::make_shared<const SignedChain>(cancel(*raw_[current_[a]].chain, sigma)));
      link(current_[a], v);
      current_[a] = v;
      return;
    }
    const auto v = new_vertex(
        time, std::make_shared<const SignedChain>(
                  merge(*raw_[current_[a]].chain, *raw_[current_[b]].chain, sigma)));
    link(current_[a], v);
    link(current_[b], v);
    auto big = a, small = b;
    if (size_[big] < size_[small]) std::swap(big, small);
    parent_[small] = big;
    size_[big] += size_[small];
    current_[big] = v;
  }

  const FilteredComplex& k_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> size_;
  std::vector<char> inactive_;
  std::vector<std::int32_t> current_;
  std::vector<RawVertex> raw_;
};

}  // namespace

PersistenceForest persistence_forest(const FilteredComplex& k) {
  std::vector<RawVertex> raw = Sweep(k).run();
  const auto n = static_cast<std::int32_t>(raw.size());

  // Contract equal-time edges. Children always precede their parents, so a
  // single ascending pass moves every subtree to its final parent.
  std::vector<char> alive(n, 1);
  for (std::int32_t v = 0; v < n; ++v) {
    const auto p = raw[v].parent;
    if (p < 0 || raw[v].time != raw[p].time) continue;
    auto& siblings = raw[p].children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), v));
    for (auto c : raw[v].children) {
      raw[c].parent = p;
      siblings.push_back(c);
    }
    raw[p].tops.insert(raw[p].tops.end(), raw[v].tops.begin(), raw[v].tops.end());
    alive[v] = 0;
  }

  // Renumber: ascending raw order, each root expanded into one copy per
  // child carrying that child's chain; isolated vertices dropped.
  std::vector<std::int32_t> new_id(n, -1);
  std::vector<std::int32_t> root_child;  // per new vertex: the child a root copy owns
  std::vector<std::int32_t> origin;
  for (std::int32_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    auto& rv = raw[v];
    std::sort(rv.children.begin(), rv.children.end());
    if (rv.parent < 0) {
      for (auto c : rv.children) {
        origin.push_back(v);
        root_child.push_back(c);
      }
      continue;
    }
    new_id[v] = static_cast<std::int32_t>(origin.size());
    origin.push_back(v);
    root_child.push_back(-1);
  }

  PersistenceForest f;
  f.vertices.resize(origin.size());
  f.chains.resize(origin.size());
  for (std::size_t i = 0; i < origin.size(); ++i) {
    auto& out = f.vertices[i];
    const auto& rv = raw[origin[i]];
    out.id = static_cast<std::int32_t>(i);
    out.time = rv.time;
    if (root_child[i] >= 0) {
      const auto c = root_child[i];
      out.children = {new_id[c]};
      f.vertices[new_id[c]].parent = out.id;
      f.chains[i] = raw[c].chain;
    } else {
      out.tops = rv.tops;
      std::sort(out.tops.begin(), out.tops.end());
      for (auto c : rv.children) {
        out.children.push_back(new_id[c]);
        f.vertices[new_id[c]].parent = out.id;
      }
      f.chains[i] = rv.chain;
    }
  }
  for (auto& v : f.vertices) {
    if (v.parent < 0) {
      v.kind = VertexKind::root;
    } else if (v.children.empty()) {
      v.kind = VertexKind::leaf;
    } else if (v.children.size() >= 2) {
      v.kind = VertexKind::merge;
    } else {
      v.kind = VertexKind::cancel;
    }
  }
  return f;
}

UnsignedForest unsigned_forest(const PersistenceForest& f) {
  UnsignedForest out;
  out.vertices = f.vertices;
  out.chains.reserve(f.chains.size());
  std::shared_ptr<const SignedChain> last_in;
  std::shared_ptr<const Chain> last_out;
  for (const auto& c : f.chains) {
    if (c != last_in) {
      last_in = c;
      last_out = std::make_shared<const Chain>(project(*c));
    }
    out.chains.push_back(last_out);
  }
  return out;
}

template <class C>
std::vector<TopId> interior_of(const BasicForest<C>& f, std::int32_t v) {
  f.vertex(v);
  std::vector<TopId> out;
  std::vector<std::int32_t> stack{v};
  while (!stack.empty()) {
    const auto& x = f.vertices[stack.back()];
    stack.pop_back();
    out.insert(out.end(), x.tops.begin(), x.tops.end());
    stack.insert(stack.end(), x.children.begin(), x.children.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class C>
std::vector<double> interior_weights(const BasicForest<C>& f,
                                     std::span<const double> top_weight) {
  std::vector<double> w(f.size(), 0.0);
  for (const auto& v : f.vertices) {
    for (auto t : v.tops) w[v.id] += top_weight[t];
    if (v.parent >= 0) w[v.parent] += w[v.id];
  }
  return w;
}

template <class C>
std::vector<std::int32_t> active_at(const BasicForest<C>& f, double t) {
  std::vector<std::int32_t> out;
  for (const auto& v : f.vertices) {
    if (v.parent >= 0 && v.time > t && f.vertices[v.parent].time <= t) out.push_back(v.id);
  }
  return out;
}

template std::vector<TopId> interior_of(const PersistenceForest&, std::int32_t);
template std::vector<TopId> interior_of(const UnsignedForest&, std::int32_t);
template std::vector<double> interior_weights(const PersistenceForest&,
                                              std::span<const double>);
template std::vector<double> interior_weights(const UnsignedForest&, std::span<const double>);
template std::vector<std::int32_t> active_at(const PersistenceForest&, double);
template std::vector<std::int32_t> active_at(const UnsignedForest&, double);

}  // namespace loopforest
