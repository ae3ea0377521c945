#include "loopforest/progression.hpp"

#include <algorithm>

namespace loopforest {

template <class C>
std::ptrdiff_t CycleProgression<C>::step_index(double r) const {
  if (!(r >= bar.birth && r < bar.death)) return -1;
  // Steps are sorted by descending `from`; find the first with from <= r.
  auto it = std::partition_point(steps.begin(), steps.end(),
                                 [r](const Step<C>& s) { return s.from > r; });
  return it == steps.end() ? -1 : it - steps.begin();
}

template <class C>
BasicBarcode<C> extract_progressions(const BasicForest<C>& f) {
  const auto n = static_cast<std::int32_t>(f.size());
  // best[v]: leaf of the branch that continues through v.
  std::vector<std::int32_t> best(n, -1);
  auto older = [&](std::int32_t a, std::int32_t b) {
    const auto& x = f.vertices[a];
    const auto& y = f.vertices[b];
    if (x.time != y.time) return x.time > y.time;
    return f.leaf_top(a) < f.leaf_top(b);
  };
  for (std::int32_t v = 0; v < n; ++v) {
    const auto& x = f.vertices[v];
    if (x.children.empty()) {
      best[v] = v;
      continue;
    }
    for (auto c : x.children) {
      if (best[v] < 0 || older(best[c], best[v])) best[v] = best[c];
    }
  }

  BasicBarcode<C> out;
  for (std::int32_t leaf = 0; leaf < n; ++leaf) {
    const auto& lv = f.vertices[leaf];
    if (!lv.children.empty() || lv.parent < 0) continue;
    CycleProgression<C> gamma;
    gamma.leaf = leaf;
    gamma.leaf_top = f.leaf_top(leaf);
    std::int32_t cur = leaf;
    while (true) {
      const auto p = f.vertices[cur].parent;
      gamma.steps.push_back({f.vertices[p].time, f.vertices[cur].time, cur, f.chains[cur]});
      if (best[p] != leaf || f.vertices[p].parent < 0) {
        cur = p;
        break;
      }
      cur = p;
    }
    gamma.bar = {f.vertices[cur].time, lv.time};
    if (gamma.bar.birth < gamma.bar.death) out.entries.push_back(std::move(gamma));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const CycleProgression<C>& a, const CycleProgression<C>& b) {
              if (a.bar.length() != b.bar.length()) return a.bar.length() > b.bar.length();
              if (a.bar.death != b.bar.death) return a.bar.death > b.bar.death;
              return a.leaf_top < b.leaf_top;
            });
  return out;
}

template <class C>
C evaluate(const CycleProgression<C>& gamma, double r) {
  const auto i = gamma.step_index(r);
  return i < 0 ? C{} : *gamma.steps[i].chain;
}

template struct CycleProgression<SignedChain>;
template struct CycleProgression<Chain>;
template ProgressionBarcode extract_progressions(const PersistenceForest&);
template UnsignedBarcode extract_progressions(const UnsignedForest&);
template SignedChain evaluate(const CycleProgression<SignedChain>&, double);
template Chain evaluate(const CycleProgression<Chain>&, double);

}  // namespace loopforest
