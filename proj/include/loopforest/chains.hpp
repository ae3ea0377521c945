#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "loopforest/complex.hpp"

namespace loopforest {

/// Codimension-one chain over the symbols sigma+ and sigma-. Every signed
/// symbol has coefficient 0 or 1, so a chain is the pair of supports. A
/// facet may occur in both (a bridge). Both vectors are sorted ascending.
struct SignedChain {
  std::vector<FacetId> plus;
  std::vector<FacetId> minus;

  bool empty() const { return plus.empty() && minus.empty(); }
  friend bool operator==(const SignedChain&, const SignedChain&) = default;
};

/// Ordinary chain with integer coefficients, sorted by facet id, no zeros.
struct Chain {
  std::vector<std::pair<FacetId, std::int64_t>> coeffs;

  bool empty() const { return coeffs.empty(); }
  std::int64_t coefficient(FacetId f) const;
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Builds a chain from (facet, coefficient) terms in any order; repeated
/// facets are summed and zeros dropped.
Chain make_chain(std::vector<std::pair<FacetId, std::int64_t>> terms);

/// a + scale * b.
Chain add(const Chain& a, const Chain& b, std::int64_t scale = 1);

/// Signed boundary of a top simplex, twisted by its orientation: face i of
/// the sorted vertex list gets the sign (-1)^i, and plus/minus are swapped
/// when the orientation is negative. Throws LookupError for a bad id.
SignedChain signed_boundary(const FilteredComplex& k, TopId top);

/// The involution swapping sigma+ and sigma-.
SignedChain iota(SignedChain z);

/// z1 + z2 with both sigma+ and sigma- removed.
SignedChain merge(const SignedChain& z1, const SignedChain& z2, FacetId sigma);

/// z with both sigma+ and sigma- removed.
SignedChain cancel(const SignedChain& z, FacetId sigma);

/// sigma+ -> sigma, sigma- -> -sigma.
Chain project(const SignedChain& z);

/// Facets carrying a signed symbol (plus union minus), sorted, no repeats.
std::vector<FacetId> support(const SignedChain& z);
std::vector<FacetId> support(const Chain& z);

/// Number of connected components of the complex formed by the given
/// facets, two facets being adjacent when they share a (d-1)-face (a vertex
/// when d = 1). Zero for an empty set.
std::size_t count_components(const FilteredComplex& k, std::span<const FacetId> facets);

/// Boundary of a d-chain as (sorted (d-1)-face, coefficient) terms with
/// zeros removed; empty iff z is a cycle.
std::vector<std::pair<std::vector<VertexId>, std::int64_t>> chain_boundary(
    const FilteredComplex& k, const Chain& z);

}  // namespace loopforest
