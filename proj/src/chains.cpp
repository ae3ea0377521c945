#include "loopforest/chains.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>

#include "loopforest/errors.hpp"

namespace loopforest {

std::int64_t Chain::coefficient(FacetId f) const {
  auto it = std::lower_bound(coeffs.begin(), coeffs.end(), f,
                             [](const auto& term, FacetId id) { return term.first < id; });
  return (it != coeffs.end() && it->first == f) ? it->second : 0;
}

Chain make_chain(std::vector<std::pair<FacetId, std::int64_t>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Chain out;
  for (const auto& [f, c] : terms) {
    if (!out.coeffs.empty() && out.coeffs.back().first == f) {
      out.coeffs.back().second += c;
    } else {
      out.coeffs.emplace_back(f, c);
    }
  }
  std::erase_if(out.coeffs, [](const auto& t) { return t.second == 0; });
  return out;
}

Chain add(const Chain& a, const Chain& b, std::int64_t scale) {
  Chain out;
  out.coeffs.reserve(a.coeffs.size() + b.coeffs.size());
  auto i = a.coeffs.begin();
  auto j = b.coeffs.begin();
  while (i != a.coeffs.end() || j != b.coeffs.end()) {
    if (j == b.coeffs.end() || (i != a.coeffs.end() && i->first < j->first)) {
      out.coeffs.push_back(*i++);
    } else if (i == a.coeffs.end() || j->first < i->first) {
      if (scale * j->second != 0) out.coeffs.emplace_back(j->first, scale * j->second);
      ++j;
    } else {
      const std::int64_t c = i->second + scale * j->second;
      if (c != 0) out.coeffs.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

SignedChain signed_boundary(const FilteredComplex& k, TopId top) {
  if (top < 0 || static_cast<std::size_t>(top) >= k.num_tops()) {
    throw LookupError("unknown top simplex " + std::to_string(top));
  }
  SignedChain z;
  const auto faces = k.faces(top);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    (i % 2 == 0 ? z.plus : z.minus).push_back(faces[i]);
  }
  std::sort(z.plus.begin(), z.plus.end());
  std::sort(z.minus.begin(), z.minus.end());
  if (k.orientation(top) < 0) std::swap(z.plus, z.minus);
  return z;
}

SignedChain iota(SignedChain z) {
  std::swap(z.plus, z.minus);
  return z;
}

namespace {

std::vector<FacetId> union_without(const std::vector<FacetId>& a,
                                   const std::vector<FacetId>& b, FacetId sigma) {
  std::vector<FacetId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  auto it = std::lower_bound(out.begin(), out.end(), sigma);
  if (it != out.end() && *it == sigma) out.erase(it);
  return out;
}

}  // namespace

SignedChain merge(const SignedChain& z1, const SignedChain& z2, FacetId sigma) {
  return {union_without(z1.plus, z2.plus, sigma), union_without(z1.minus, z2.minus, sigma)};
}

SignedChain cancel(const SignedChain& z, FacetId sigma) {
  static const std::vector<FacetId> kEmpty;
  return {union_without(z.plus, kEmpty, sigma), union_without(z.minus, kEmpty, sigma)};
}

Chain project(const SignedChain& z) {
  Chain out;
  out.coeffs.reserve(z.plus.size() + z.minus.size());
  auto i = z.plus.begin();
  auto j = z.minus.begin();
  while (i != z.plus.end() || j != z.minus.end()) {
    if (j == z.minus.end() || (i != z.plus.end() && *i < *j)) {
      out.coeffs.emplace_back(*i++, 1);
    } else if (i == z.plus.end() || *j < *i) {
      out.coeffs.emplace_back(*j++, -1);
    } else {
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<FacetId> support(const SignedChain& z) {
  std::vector<FacetId> out;
  out.reserve(z.plus.size() + z.minus.size());
  std::set_union(z.plus.begin(), z.plus.end(), z.minus.begin(), z.minus.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<FacetId> support(const Chain& z) {
  std::vector<FacetId> out;
  out.reserve(z.coeffs.size());
  for (const auto& [f, c] : z.coeffs) out.push_back(f);
  return out;
}

std::size_t count_components(const FilteredComplex& k, std::span<const FacetId> facets) {
  const std::size_t n = facets.size();
  if (n == 0) return 0;
  const std::size_t d = static_cast<std::size_t>(k.facet_dim());
  if (d == 0) return n;

  // (sub-face, owning position) records; facets sharing a sub-face are linked.
  struct Record {
    std::vector<VertexId> face;
    std::size_t owner;
  };
  std::vector<Record> records;
  records.reserve(n * (d + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto verts = k.facet_vertices(facets[i]);
    for (std::size_t drop = 0; drop <= d; ++drop) {
      Record r{{}, i};
      r.face.reserve(d);
      for (std::size_t j = 0; j <= d; ++j) {
        if (j != drop) r.face.push_back(verts[j]);
      }
      records.push_back(std::move(r));
    }
  }
  std::sort(records.begin(), records.end(),
            [](const Record& a, const Record& b) { return a.face < b.face; });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = n;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].face != records[i - 1].face) continue;
    const auto a = find(records[i].owner);
    const auto b = find(records[i - 1].owner);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

std::vector<std::pair<std::vector<VertexId>, std::int64_t>> chain_boundary(
    const FilteredComplex& k, const Chain& z) {
  const std::size_t d = static_cast<std::size_t>(k.facet_dim());
  std::vector<std::pair<std::vector<VertexId>, std::int64_t>> terms;
  for (const auto& [f, c] : z.coeffs) {
    const auto verts = k.facet_vertices(f);
    for (std::size_t drop = 0; drop <= d; ++drop) {
      std::vector<VertexId> face;
      for (std::size_t j = 0; j <= d; ++j) {
        if (j != drop) face.push_back(verts[j]);
      }
      terms.emplace_back(std::move(face), drop % 2 == 0 ? c : -c);
    }
  }
  std::sort(terms.begin(), terms.end());
  std::vector<std::pair<std::vector<VertexId>, std::int64_t>> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  return out;
}

}  // namespace loopforest
