#include "loopforest/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace loopforest {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].first) || !std::isfinite(points_[i].second)) {
      throw std::invalid_argument("non-finite breakpoint");
    }
    if (i > 0 && !(points_[i].first > points_[i - 1].first)) {
      throw std::invalid_argument("breakpoints must have strictly increasing x");
    }
  }
}

bool PiecewiseLinear::is_zero() const {
  return std::all_of(points_.begin(), points_.end(),
                     [](const auto& p) { return p.second == 0.0; });
}

double PiecewiseLinear::operator()(double x) const {
  if (points_.empty() || x < points_.front().first || x > points_.back().first) return 0.0;
  auto it = std::lower_bound(points_.begin(), points_.end(), x,
                             [](const auto& p, double v) { return p.first < v; });
  if (it->first == x) return it->second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return y0 + (y1 - y0) * ((x - x0) / (x1 - x0));
}

namespace {

// Drops breakpoints that repeat an x (keeping the first) and interior
// points of constant runs.
std::vector<std::pair<double, double>> simplify(std::vector<std::pair<double, double>> pts) {
  std::vector<std::pair<double, double>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (!out.empty() && !(p.first > out.back().first)) continue;
    out.push_back(p);
  }
  std::vector<std::pair<double, double>> lean;
  lean.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!lean.empty() && i + 1 < out.size() && lean.back().second == out[i].second &&
        out[i].second == out[i + 1].second) {
      continue;
    }
    lean.push_back(out[i]);
  }
  return lean;
}

}  // namespace

PiecewiseLinear box_convolve(const StepFunction& s, const Bar& bar) {
  const double b = bar.birth;
  const double d = bar.death;
  if (s.empty()) return {};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].from < s[i].to) || s[i].from < b || s[i].to > d ||
        (i > 0 && s[i].from < s[i - 1].to)) {
      throw std::invalid_argument("step function is unsorted or leaves its bar");
    }
  }
  // Cumulative integral of s from b, piecewise linear with knots at the
  // piece boundaries.
  std::vector<double> knots{b};
  std::vector<double> cumulative{0.0};
  std::vector<double> slopes;
  for (const auto& piece : s) {
    if (piece.from > knots.back()) {
      slopes.push_back(0.0);
      knots.push_back(piece.from);
      cumulative.push_back(cumulative.back());
    }
    slopes.push_back(piece.value);
    knots.push_back(piece.to);
    cumulative.push_back(cumulative.back() + piece.value * (piece.to - piece.from));
  }
  auto integral = [&](double y) {
    if (y <= knots.front()) return 0.0;
    if (y >= knots.back()) return cumulative.back();
    const auto j = static_cast<std::size_t>(
        std::upper_bound(knots.begin(), knots.end(), y) - knots.begin() - 1);
    return cumulative[j] + slopes[j] * (y - knots[j]);
  };
  auto g = [&](double x) {
    const double hi = std::min(d, 2.0 * x - b);
    const double lo = std::max(b, 2.0 * x - d);
    return hi > lo ? 0.5 * (integral(hi) - integral(lo)) : 0.0;
  };

  std::vector<double> xs{b, d, 0.5 * (b + d)};
  for (double c : knots) {
    xs.push_back(0.5 * (c + b));
    xs.push_back(0.5 * (c + d));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<double, double>> pts;
  pts.reserve(xs.size());
  for (double x : xs) {
    if (x < b || x > d) continue;
    pts.emplace_back(x, (x == b || x == d) ? 0.0 : g(x));
  }
  return PiecewiseLinear(simplify(std::move(pts)));
}

namespace {

/// The `count` largest values of the family, as functions of x, where every
/// function is zero outside its breakpoint range. Within each elementary
/// interval all pairwise crossings are sample points, so the order of the
/// functions is fixed between samples and every level is linear there. A
/// level gets a breakpoint only where the function holding it changes or
/// bends.
std::vector<PiecewiseLinear> merge_levels(std::span<const PiecewiseLinear* const> fs,
                                          std::size_t count) {
  std::vector<double> xs;
  for (const auto* f : fs) {
    for (const auto& p : f->breakpoints()) xs.push_back(p.first);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) return std::vector<PiecewiseLinear>(count);

  const std::size_t k = fs.size();
  std::vector<std::vector<std::pair<double, double>>> levels(count);
  std::vector<std::size_t> cursor(k, 0);
  std::vector<std::size_t> order(k);
  std::vector<std::size_t> owner(count, k);
  std::vector<double> value(k), slope(k), ys(k), cuts;
  std::vector<char> bends(k);

  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const double lo = xs[s];
    const double hi = xs[s + 1];
    for (std::size_t i = 0; i < k; ++i) {
      const auto& pts = fs[i]->breakpoints();
      if (pts.size() < 2 || lo < pts.front().first || lo >= pts.back().first) {
        value[i] = slope[i] = 0.0;
        bends[i] = !pts.empty() && pts.back().first == lo;
        continue;
      }
      auto& c = cursor[i];
      while (pts[c + 1].first <= lo) ++c;
      const auto& [x0, y0] = pts[c];
      const auto& [x1, y1] = pts[c + 1];
      slope[i] = (y1 - y0) / (x1 - x0);
      value[i] = lo == x0 ? y0 : y0 + slope[i] * (lo - x0);
      bends[i] = lo == x0;
    }
    cuts.assign(1, lo);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (slope[i] == slope[j]) continue;
        const double cx = lo + (value[j] - value[i]) / (slope[i] - slope[j]);
        if (cx > lo && cx < hi) cuts.push_back(cx);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(hi);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double x = cuts[c];
      // The order is constant between consecutive cuts; the midpoint fixes
      // which function holds each rank there.
      const double mid = 0.5 * (x + cuts[c + 1]);
      for (std::size_t i = 0; i < k; ++i) ys[i] = value[i] + slope[i] * (mid - lo);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::partial_sort(order.begin(), order.begin() + count, order.end(),
                        [&](std::size_t a, std::size_t b) {
                          return ys[a] != ys[b] ? ys[a] > ys[b] : a < b;
                        });
      for (std::size_t i = 0; i < k; ++i) ys[i] = x == lo ? value[i] : value[i] + slope[i] * (x - lo);
      bool sorted = false;
      for (std::size_t r = 0; r < count; ++r) {
        const auto i = order[r];
        if (owner[r] == i && !(x == lo && bends[i])) continue;
        if (!sorted) {
          std::partial_sort(ys.begin(), ys.begin() + count, ys.end(), std::greater<>());
          sorted = true;
        }
        levels[r].emplace_back(x, ys[r]);
        owner[r] = i;
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) ys[i] = (*fs[i])(xs.back());
  std::partial_sort(ys.begin(), ys.begin() + count, ys.end(), std::greater<>());
  for (std::size_t r = 0; r < count; ++r) levels[r].emplace_back(xs.back(), ys[r]);

  std::vector<PiecewiseLinear> out;
  out.reserve(count);
  for (auto& level : levels) out.emplace_back(simplify(std::move(level)));
  return out;
}

}  // namespace

std::vector<PiecewiseLinear> top_levels(std::span<const PiecewiseLinear> fs, int n) {
  if (n < 1) throw std::invalid_argument("top_levels needs n >= 1");
  const auto rank = static_cast<std::size_t>(n);
  if (fs.empty()) return std::vector<PiecewiseLinear>(rank);

  // Pairwise merging: the top n levels of a union are the top n levels of
  // the two halves' top n levels.
  std::vector<std::vector<PiecewiseLinear>> groups;
  groups.reserve(fs.size());
  for (const auto& f : fs) groups.push_back({f});
  std::vector<const PiecewiseLinear*> members;
  while (groups.size() > 1) {
    std::vector<std::vector<PiecewiseLinear>> next;
    next.reserve((groups.size() + 1) / 2);
    for (std::size_t g = 0; g + 1 < groups.size(); g += 2) {
      members.clear();
      for (const auto& f : groups[g]) members.push_back(&f);
      for (const auto& f : groups[g + 1]) members.push_back(&f);
      next.push_back(merge_levels(members, std::min(rank, members.size())));
    }
    if (groups.size() % 2 == 1) next.push_back(std::move(groups.back()));
    groups = std::move(next);
  }
  auto out = std::move(groups.front());
  out.resize(rank);
  return out;
}

PiecewiseLinear kth_max(std::span<const PiecewiseLinear> fs, int n) {
  if (n < 1) throw std::invalid_argument("kth_max needs n >= 1");
  return std::move(top_levels(fs, n).back());
}

template <class C>
std::vector<PiecewiseLinear> generalized_landscapes(const BasicBarcode<C>& barcode,
                                                    FunctionalEvaluator<C>& eval, Functional f,
                                                    int n) {
  std::vector<PiecewiseLinear> parts;
  parts.reserve(barcode.entries.size());
  for (const auto& gamma : barcode.entries) {
    parts.push_back(box_convolve(step_function(eval, f, gamma), gamma.bar));
  }
  return top_levels(parts, n);
}

template <class C>
PiecewiseLinear generalized_landscape(const BasicBarcode<C>& barcode,
                                      FunctionalEvaluator<C>& eval, Functional f, int n) {
  if (n < 1) throw std::invalid_argument("generalized_landscape needs n >= 1");
  return std::move(generalized_landscapes(barcode, eval, f, n).back());
}

PiecewiseLinear classical_landscape(std::span<const Bar> bars, int n) {
  if (n < 1) throw std::invalid_argument("classical_landscape needs n >= 1");
  if (static_cast<std::size_t>(n) > bars.size()) return {};
  std::vector<double> xs;
  for (const auto& a : bars) {
    xs.push_back(a.birth);
    xs.push_back(a.death);
    for (const auto& c : bars) xs.push_back(0.5 * (a.birth + c.death));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<std::pair<double, double>> pts;
  std::vector<double> values(bars.size());
  for (double x : xs) {
    for (std::size_t i = 0; i < bars.size(); ++i) {
      values[i] = std::max(0.0, std::min(x - bars[i].birth, bars[i].death - x));
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    pts.emplace_back(x, values[n - 1]);
  }
  return PiecewiseLinear(std::move(pts));
}

template std::vector<PiecewiseLinear> generalized_landscapes(const ProgressionBarcode&,
                                                             FunctionalEvaluator<SignedChain>&,
                                                             Functional, int);
template std::vector<PiecewiseLinear> generalized_landscapes(const UnsignedBarcode&,
                                                             FunctionalEvaluator<Chain>&,
                                                             Functional, int);
template PiecewiseLinear generalized_landscape(const ProgressionBarcode&,
                                               FunctionalEvaluator<SignedChain>&, Functional,
                                               int);
template PiecewiseLinear generalized_landscape(const UnsignedBarcode&,
                                               FunctionalEvaluator<Chain>&, Functional, int);

}  // namespace loopforest
