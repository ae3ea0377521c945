#pragma once

#include <span>
#include <utility>
#include <vector>

#include "loopforest/functionals.hpp"
#include "loopforest/progression.hpp"

namespace loopforest {

/// Continuous piecewise-linear function given by breakpoints (x, y) with
/// strictly increasing x, interpolated linearly in between and identically
/// zero outside [front.x, back.x].
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  /// Throws std::invalid_argument unless x is strictly increasing and all
  /// values are finite.
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> breakpoints);

  const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }
  bool is_zero() const;
  double operator()(double x) const;

 private:
  std::vector<std::pair<double, double>> points_;
};

/// x -> 1/2 * ((s * 1_I)(2x)) for a step function s supported on I = bar:
/// the integral of s over the window [2x - death, 2x - birth], halved. For
/// s = 1_I this is the tent max{0, min{x - birth, death - x}}.
/// Throws std::invalid_argument if the pieces are unsorted, overlap, or
/// leave I.
PiecewiseLinear box_convolve(const StepFunction& s, const Bar& bar);

/// Pointwise n-th largest value of the functions (n >= 1), a function
/// counting as 0 outside its support. Exact up to floating-point rounding
/// of the breakpoint coordinates.
PiecewiseLinear kth_max(std::span<const PiecewiseLinear> fs, int n);

/// The pointwise 1st to n-th largest values at once; entry i is
/// kth_max(fs, i + 1).
std::vector<PiecewiseLinear> top_levels(std::span<const PiecewiseLinear> fs, int n);

/// n-th generalized landscape: kth_max over the box convolutions of
/// f composed with every progression.
template <class C>
PiecewiseLinear generalized_landscape(const BasicBarcode<C>& barcode,
                                      FunctionalEvaluator<C>& eval, Functional f, int n);

/// Generalized landscapes 1 to n; entry i is generalized_landscape(..., i + 1).
template <class C>
std::vector<PiecewiseLinear> generalized_landscapes(const BasicBarcode<C>& barcode,
                                                    FunctionalEvaluator<C>& eval, Functional f,
                                                    int n);

/// Classical n-th persistence landscape of the bars, computed directly
/// from the tent functions.
PiecewiseLinear classical_landscape(std::span<const Bar> bars, int n);

}  // namespace loopforest
