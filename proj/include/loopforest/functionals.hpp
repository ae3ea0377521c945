#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loopforest/progression.hpp"

namespace loopforest {

enum class Functional {
  constant,
  volume,           // "length" for planar cycles
  enclosed_volume,  // "area" for planar cycles
  excess_curvature,
  excess_components,
  isoperimetric,    // length^2 / area - 4 pi
};

/// CLI names: const, length, area, excess-curvature, excess-components, iso
/// (volume and enclosed-volume are accepted as aliases of length and area).
/// Throws InputError for anything else.
Functional functional_from_name(std::string_view name);
std::string_view functional_name(Functional f);

/// f(a z) = f(z) for every nonzero scalar a.
bool scale_invariant(Functional f);

/// Sum of facet volumes over the support. A facet carried by both sigma+
/// and sigma- counts twice.
double vol(const FilteredComplex& k, const SignedChain& z);
double vol(const FilteredComplex& k, const Chain& z);

/// Sum of top-simplex volumes.
double evol(const FilteredComplex& k, std::span<const TopId> interior);

/// Per-top volume, indexable by TopId.
std::vector<double> top_volumes(const FilteredComplex& k);

struct CurvatureValue {
  double value = 0.0;
  /// False when the decomposition into closed curves came from the greedy
  /// fallback instead of exhaustive search.
  bool exact = true;
};

/// Excess curvature of a planar 1-cycle: the support is split into closed
/// polygonal curves with as few curves as possible, then least total
/// turning; the result is sum over curves of (total turning / 2 pi - 1).
/// Throws FunctionalError if the ambient dimension is not 2 or the oriented
/// edges are unbalanced at some vertex.
CurvatureValue excess_curvature(const FilteredComplex& k, const SignedChain& z);
CurvatureValue excess_curvature(const FilteredComplex& k, const Chain& z);

/// Connected components of the support minus one; 0 for the zero chain.
double excess_components(const FilteredComplex& k, const SignedChain& z);
double excess_components(const FilteredComplex& k, const Chain& z);

/// 1 for any chain.
double const_one();

/// Piece of a step function: `value` on [from, to).
struct StepPiece {
  double from = 0.0;
  double to = 0.0;
  double value = 0.0;
};
/// Pieces sorted by ascending `from`, contiguous.
using StepFunction = std::vector<StepPiece>;

/// Evaluates functionals on the chains of a forest. Interiors come from the
/// forest, so enclosed volume costs O(1) per vertex after a linear
/// precomputation. Values are cached per (functional, vertex).
template <class C>
class FunctionalEvaluator {
 public:
  FunctionalEvaluator(const FilteredComplex& k, const BasicForest<C>& f);

  double operator()(Functional fn, std::int32_t vertex);

  /// True once any excess-curvature value used the greedy fallback.
  bool approximate() const { return approximate_; }

 private:
  const FilteredComplex& k_;
  const BasicForest<C>& f_;
  std::vector<double> enclosed_;
  std::vector<std::vector<double>> cache_;
  bool approximate_ = false;
};

/// f composed with gamma: one piece per step, ascending in time.
template <class C>
StepFunction step_function(FunctionalEvaluator<C>& eval, Functional fn,
                           const CycleProgression<C>& gamma);

}  // namespace loopforest
