#include "oracle/oracle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace loopforest::oracle {

namespace {

using Rational = boost::multiprecision::cpp_rational;

}  // namespace

Oracle::Oracle(const FilteredComplex& k) : k_(k) {
  std::map<std::vector<VertexId>, FacetId> index;
  for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
    const auto v = k.facet_vertices(f);
    index.emplace(std::vector<VertexId>(v.begin(), v.end()), f);
  }
  faces_.resize(k.num_tops());
  cofaces_.resize(k.num_facets());
  for (TopId top = 0; top < static_cast<TopId>(k.num_tops()); ++top) {
    const auto verts = k.top_vertices(top);
    std::vector<VertexId> sorted(verts.begin(), verts.end());
    std::sort(sorted.begin(), sorted.end());
    const int w = orientation(k, top);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      std::vector<VertexId> face;
      for (std::size_t j = 0; j < sorted.size(); ++j) {
        if (j != i) face.push_back(sorted[j]);
      }
      const auto it = index.find(face);
      if (it == index.end()) throw std::logic_error("face of a top simplex is missing");
      const int sign = (i % 2 == 0 ? 1 : -1) * w;
      faces_[top].emplace_back(it->second, sign);
      cofaces_[it->second].emplace_back(top, sign);
    }
  }
}

int orientation(const FilteredComplex& k, TopId top) {
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  const auto verts = k.top_vertices(top);
  std::vector<VertexId> sorted(verts.begin(), verts.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  const auto p0 = k.point(sorted[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = k.point(sorted[i + 1]);
    for (std::size_t j = 0; j < n; ++j) m[j][i] = Rational(p[j]) - Rational(p0[j]);
  }
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(m[r], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

Components Oracle::complement_components(double t) const {
  const auto& k = k_;
  const auto nt = k.num_tops();
  const auto inf = nt;  // node id of the unbounded region
  std::vector<std::vector<std::size_t>> adj(nt + 1);
  const auto& cof = cofaces_;
  for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
    if (!(k.facet_filtration(f) > t)) continue;
    if (cof[f].size() == 1) {
      adj[cof[f][0].first].push_back(inf);
      adj[inf].push_back(cof[f][0].first);
    } else if (cof[f].size() == 2) {
      adj[cof[f][0].first].push_back(cof[f][1].first);
      adj[cof[f][1].first].push_back(cof[f][0].first);
    }
  }
  std::vector<int> label(nt + 1, -1);
  auto flood = [&](std::size_t start, int id) {
    std::vector<std::size_t> stack{start};
    label[start] = id;
    std::vector<TopId> members;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      if (x != inf) members.push_back(static_cast<TopId>(x));
      for (auto y : adj[x]) {
        if (y != inf && !(k.top_filtration(static_cast<TopId>(y)) > t)) continue;
        if (label[y] < 0) {
          label[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  };
  Components out;
  out.unbounded = flood(inf, 0);
  int next = 1;
  for (std::size_t s = 0; s < nt; ++s) {
    if (label[s] >= 0 || !(k.top_filtration(static_cast<TopId>(s)) > t)) continue;
    out.bounded.push_back(flood(s, next++));
  }
  return out;
}

SignedChain Oracle::theta(std::span<const TopId> c, double t) const {
  const auto& k = k_;
  std::map<FacetId, std::pair<int, int>> count;
  for (auto top : c) {
    for (const auto& [f, s] : faces_[top]) {
      auto& entry = count[f];
      (s > 0 ? entry.first : entry.second) += 1;
    }
  }
  SignedChain z;
  for (const auto& [f, pm] : count) {
    if (k.facet_filtration(f) > t) continue;
    if (pm.first > 1 || pm.second > 1) {
      throw std::logic_error("signed symbol with coefficient 2 in theta");
    }
    if (pm.first) z.plus.push_back(f);
    if (pm.second) z.minus.push_back(f);
  }
  return z;
}

Chain Oracle::oriented_boundary(TopId top) const {
  std::vector<std::pair<FacetId, std::int64_t>> terms;
  for (const auto& [f, s] : faces_[top]) terms.emplace_back(f, s);
  return make_chain(std::move(terms));
}

Chain Oracle::boundary(const TopChain& x) const {
  std::vector<std::pair<FacetId, std::int64_t>> terms;
  for (const auto& [top, c] : x) {
    for (const auto& [f, s] : faces_[top]) terms.emplace_back(f, c * s);
  }
  return make_chain(std::move(terms));
}

TopChain Oracle::interior_solve(const Chain& z) const {
  const auto& k = k_;
  const auto& cof = cofaces_;
  const auto nt = k.num_tops();
  const auto nf = k.num_facets();
  std::vector<std::int64_t> value(nt, 0);
  std::vector<char> known(nt, 0);
  auto unknown_count = [&](FacetId f) {
    int u = 0;
    for (const auto& [t, s] : cof[f]) u += known[t] ? 0 : 1;
    return u;
  };
  std::deque<FacetId> queue;
  for (FacetId f = 0; f < static_cast<FacetId>(nf); ++f) {
    if (cof[f].size() == 1) queue.push_back(f);
  }
  while (!queue.empty()) {
    const auto f = queue.front();
    queue.pop_front();
    if (unknown_count(f) != 1) continue;
    std::int64_t rest = z.coefficient(f);
    TopId target = -1;
    int sign = 0;
    for (const auto& [t, s] : cof[f]) {
      if (known[t]) {
        rest -= s * value[t];
      } else {
        target = t;
        sign = s;
      }
    }
    value[target] = rest * sign;  // sign is +-1
    known[target] = 1;
    for (const auto& [g, s] : faces_[target]) {
      if (unknown_count(g) == 1) queue.push_back(g);
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (!known[t]) throw std::domain_error("no solution: dual graph is disconnected");
  }
  for (FacetId f = 0; f < static_cast<FacetId>(nf); ++f) {
    std::int64_t sum = 0;
    for (const auto& [t, s] : cof[f]) sum += s * value[t];
    if (sum != z.coefficient(f)) throw std::domain_error("not a cycle");
  }
  for (const auto& [f, c] : z.coeffs) {
    if (cof[f].empty() && c != 0) throw std::domain_error("not a cycle");
  }
  TopChain x;
  for (std::size_t t = 0; t < nt; ++t) {
    if (value[t] != 0) x.emplace_back(static_cast<TopId>(t), value[t]);
  }
  return x;
}

std::vector<TopId> Oracle::interior_support(const Chain& z) const {
  std::vector<TopId> out;
  for (const auto& [t, c] : interior_solve(z)) out.push_back(t);
  return out;
}

Chain Oracle::strip(double t, const Chain& z) const {
  TopChain outside;
  for (const auto& [top, c] : interior_solve(z)) {
    if (k_.top_filtration(top) > t) outside.emplace_back(top, c);
  }
  return boundary(outside);
}

std::vector<Bar> Oracle::z2_persistence() const {
  const auto& k = k_;
  const auto nf = k.num_facets();
  const auto nt = k.num_tops();
  std::vector<FacetId> facet_order(nf);
  for (std::size_t i = 0; i < nf; ++i) facet_order[i] = static_cast<FacetId>(i);
  auto facet_less = [&](FacetId a, FacetId b) {
    if (k.facet_filtration(a) != k.facet_filtration(b)) {
      return k.facet_filtration(a) < k.facet_filtration(b);
    }
    return std::ranges::lexicographical_compare(k.facet_vertices(a), k.facet_vertices(b));
  };
  std::sort(facet_order.begin(), facet_order.end(), facet_less);
  std::vector<std::size_t> row_of(nf);
  for (std::size_t i = 0; i < nf; ++i) row_of[facet_order[i]] = i;

  std::vector<TopId> top_order(nt);
  for (std::size_t i = 0; i < nt; ++i) top_order[i] = static_cast<TopId>(i);
  std::sort(top_order.begin(), top_order.end(), [&](TopId a, TopId b) {
    if (k.top_filtration(a) != k.top_filtration(b)) {
      return k.top_filtration(a) < k.top_filtration(b);
    }
    return std::ranges::lexicographical_compare(k.top_vertices(a), k.top_vertices(b));
  });

  const std::size_t words = (nf + 63) / 64;
  std::vector<std::vector<std::uint64_t>> columns;
  std::vector<long> pivot_owner(nf, -1);
  std::vector<Bar> bars;
  for (auto top : top_order) {
    std::vector<std::uint64_t> col(words, 0);
    for (const auto& [f, s] : faces_[top]) {
      const auto r = row_of[f];
      col[r / 64] ^= std::uint64_t{1} << (r % 64);
    }
    auto low = [&]() -> long {
      for (std::size_t w = words; w-- > 0;) {
        if (col[w]) return static_cast<long>(w * 64 + 63 - __builtin_clzll(col[w]));
      }
      return -1;
    };
    long l = low();
    while (l >= 0 && pivot_owner[l] >= 0) {
      const auto& other = columns[pivot_owner[l]];
      for (std::size_t w = 0; w < words; ++w) col[w] ^= other[w];
      l = low();
    }
    if (l >= 0) {
      pivot_owner[l] = static_cast<long>(columns.size());
      const double b = k.facet_filtration(facet_order[l]);
      const double d = k.top_filtration(top);
      if (b < d) bars.push_back({b, d});
    }
    columns.push_back(std::move(col));
  }
  std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  return bars;
}

Z2Span::Z2Span(std::size_t dimension, std::size_t num_tags)
    : words_((dimension + 63) / 64 + 1), tag_words_((num_tags + 63) / 64 + 1) {}

Z2Span::Bits Z2Span::bits_of(const std::vector<FacetId>& support) const {
  Bits b(words_, 0);
  for (auto f : support) b[f / 64] ^= std::uint64_t{1} << (f % 64);
  return b;
}

void Z2Span::reduce(Bits& v, Bits& tags) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto p = pivot_[i];
    if (!((v[p / 64] >> (p % 64)) & 1)) continue;
    for (std::size_t w = 0; w < words_; ++w) v[w] ^= rows_[i][w];
    for (std::size_t w = 0; w < tag_words_; ++w) tags[w] ^= row_tags_[i][w];
  }
}

bool Z2Span::add(const std::vector<FacetId>& support, std::int32_t tag) {
  Bits v = bits_of(support);
  Bits tags(tag_words_, 0);
  if (tag >= 0) tags[tag / 64] ^= std::uint64_t{1} << (tag % 64);
  reduce(v, tags);
  for (std::size_t w = 0; w < words_; ++w) {
    if (v[w]) {
      pivot_.push_back(w * 64 + __builtin_ctzll(v[w]));
      rows_.push_back(std::move(v));
      row_tags_.push_back(std::move(tags));
      return true;
    }
  }
  return false;
}

bool Z2Span::contains(const std::vector<FacetId>& support) const {
  Bits v = bits_of(support);
  Bits tags(tag_words_, 0);
  reduce(v, tags);
  return std::all_of(v.begin(), v.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::int32_t> Z2Span::tags_of(const std::vector<FacetId>& support) const {
  Bits v = bits_of(support);
  Bits tags(tag_words_, 0);
  reduce(v, tags);
  if (!std::all_of(v.begin(), v.end(), [](std::uint64_t w) { return w == 0; })) {
    throw std::domain_error("vector is not in the span");
  }
  std::vector<std::int32_t> out;
  for (std::size_t w = 0; w < tag_words_; ++w) {
    for (std::size_t b = 0; b < 64; ++b) {
      if ((tags[w] >> b) & 1) out.push_back(static_cast<std::int32_t>(w * 64 + b));
    }
  }
  return out;
}

std::vector<FacetId> z2_support(const Chain& z) {
  std::vector<FacetId> out;
  for (const auto& [f, c] : z.coeffs) {
    if (c % 2 != 0) out.push_back(f);
  }
  return out;
}

std::vector<FacetId> Oracle::facets_of(TopId top) const {
  std::vector<FacetId> out;
  for (const auto& [f, s] : faces_[top]) out.push_back(f);
  return out;
}

Z2Span Oracle::boundary_span(double t, std::size_t num_tags) const {
  const auto& k = k_;
  Z2Span span(k.num_facets(), num_tags);
  for (TopId top = 0; top < static_cast<TopId>(k.num_tops()); ++top) {
    if (k.top_filtration(top) > t) continue;
    std::vector<FacetId> faces;
    for (const auto& [f, s] : faces_[top]) faces.push_back(f);
    span.add(faces);
  }
  return span;
}

std::size_t Oracle::homology_rank(double t) const {
  const auto& k = k_;
  // Index the (d-1)-faces of the facets present at t.
  const auto d = static_cast<std::size_t>(k.facet_dim());
  std::map<std::vector<VertexId>, FacetId> subface;
  std::vector<std::vector<FacetId>> columns;
  for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
    if (k.facet_filtration(f) > t) continue;
    const auto v = k.facet_vertices(f);
    std::vector<FacetId> col;
    for (std::size_t drop = 0; drop <= d; ++drop) {
      std::vector<VertexId> face;
      for (std::size_t j = 0; j <= d; ++j) {
        if (j != drop) face.push_back(v[j]);
      }
      auto [it, inserted] = subface.emplace(face, static_cast<FacetId>(subface.size()));
      col.push_back(it->second);
    }
    columns.push_back(std::move(col));
  }
  std::size_t cycles = 0;
  if (d == 0) {
    // Reduced homology in degree 0: augmentation onto a point.
    cycles = columns.empty() ? 0 : columns.size() - 1;
  } else {
    Z2Span rank_d(subface.size());
    for (const auto& col : columns) {
      if (!rank_d.add(col)) ++cycles;
    }
  }
  return cycles - boundary_span(t).rank();
}

std::vector<double> event_times(const FilteredComplex& k) {
  std::vector<double> ts;
  for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
    ts.push_back(k.facet_filtration(f));
  }
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) ts.push_back(k.top_filtration(t));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

namespace {

Chain as_chain(const SignedChain& z) { return project(z); }
const Chain& as_chain(const Chain& z) { return z; }

}  // namespace

template <class C>
bool Oracle::verify_minimality(const BasicBarcode<C>& barcode,
                               std::span<const double> weight) const {
  const auto& k = k_;
  if (weight.size() != k.num_tops()) {
    throw std::invalid_argument("one weight per top simplex expected");
  }
  for (double w : weight) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be strictly positive");
  }
  for (double r : event_times(k)) {
    double ours = 0.0;
    for (const auto& gamma : barcode.entries) {
      const auto i = gamma.step_index(r);
      if (i < 0) continue;
      const Chain z = as_chain(*gamma.steps[i].chain);
      if (z.empty()) return false;
      TopChain x;
      try {
        x = interior_solve(z);
      } catch (const std::domain_error&) {
        return false;
      }
      for (const auto& [top, c] : x) ours += static_cast<double>(std::abs(c)) * weight[top];
    }
    double best = 0.0;
    for (const auto& c : complement_components(r).bounded) {
      for (auto top : c) best += weight[top];
    }
    if (std::abs(ours - best) > 1e-12 * std::max(1.0, std::abs(best))) return false;
  }
  return true;
}

template bool Oracle::verify_minimality(const ProgressionBarcode&, std::span<const double>) const;
template bool Oracle::verify_minimality(const UnsignedBarcode&, std::span<const double>) const;

}  // namespace loopforest::oracle
