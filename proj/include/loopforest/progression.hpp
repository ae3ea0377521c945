#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "loopforest/forest.hpp"

namespace loopforest {

/// Half-open interval [birth, death).
struct Bar {
  double birth = 0.0;
  double death = 0.0;

  double length() const { return death - birth; }
  friend bool operator==(const Bar&, const Bar&) = default;
};

/// One constant piece of a cycle progression: `chain` is the cycle on
/// [from, to). `vertex` is the forest vertex carrying it.
template <class C>
struct Step {
  double from = 0.0;
  double to = 0.0;
  std::int32_t vertex = -1;
  std::shared_ptr<const C> chain;
};

/// A bar together with its step function of cycles. Steps are ordered by
/// descending time: steps.front().to == bar.death, steps.back().from ==
/// bar.birth.
template <class C>
struct CycleProgression {
  Bar bar;
  std::vector<Step<C>> steps;
  /// Leaf vertex of the path and its top simplex.
  std::int32_t leaf = -1;
  TopId leaf_top = -1;

  /// Index of the step whose window contains r, or -1 if r is outside the
  /// bar.
  std::ptrdiff_t step_index(double r) const;
};

template <class C>
struct BasicBarcode {
  std::vector<CycleProgression<C>> entries;
};

using ProgressionBarcode = BasicBarcode<SignedChain>;
using UnsignedBarcode = BasicBarcode<Chain>;

/// Decomposes the forest into directed paths by the elder rule: at every
/// vertex with several children the branch whose leaf has the largest time
/// continues, ties going to the smaller leaf top simplex. Each path from a
/// leaf x to the vertex y where it stops yields the bar [time(y), time(x)).
///
/// Entries are sorted by decreasing length, then decreasing death, then
/// increasing leaf top simplex.
template <class C>
BasicBarcode<C> extract_progressions(const BasicForest<C>& f);

/// The chain of the progression at r, or the zero chain outside the bar.
template <class C>
C evaluate(const CycleProgression<C>& gamma, double r);

}  // namespace loopforest
