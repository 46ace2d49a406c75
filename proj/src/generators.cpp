#include "glob/generators.hpp"

namespace glob {

GlobularSet random_globular_set(Rng& rng, int dim_bound, std::size_t max_per_dim) {
  auto x = GlobularSet::empty(dim_bound);
  x.counts[0] = rng.uniform(1, max_per_dim);
  for (int k = 1; k <= dim_bound; ++k) {
    auto below = x.count(k - 1);
    if (below == 0) break;
    auto n = rng.uniform(0, max_per_dim);
    for (std::size_t i = 0; i < n; ++i) {
      // Attach a k-globe: pick a (k-1)-cell, then a cell parallel to it.
      auto a = static_cast<CellId>(rng.uniform(0, below - 1));
      std::vector<CellId> partners;
      for (CellId b = 0; b < below; ++b)
        if (parallel(x, {k - 1, a}, {k - 1, b})) partners.push_back(b);
      auto b = partners[rng.uniform(0, partners.size() - 1)];
      if (rng.coin()) std::swap(a, b);
      x.add_cell(k, a, b);
    }
  }
  return x;
}

void for_each_small_globular_set(std::size_t max_cells, int max_dim_bound,
                                 const std::function<void(const GlobularSet&)>& visit) {
  for (int d = 0; d <= max_dim_bound; ++d) {
    std::function<void(GlobularSet&, int, std::size_t)> level = [&](GlobularSet& x, int k, std::size_t left) {
      if (k > d) {
        visit(x);
        return;
      }
      auto kk = static_cast<std::size_t>(k);
      if (k == 0) {
        for (std::size_t n = 0; n <= left; ++n) {
          x.counts[0] = n;
          level(x, 1, left - n);
        }
        x.counts[0] = 0;
        return;
      }
      auto pairs = parallel_pairs(x, k);
      // Nondecreasing sequences of pair indices of every length up to `left`.
      std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t remaining) {
        level(x, k + 1, remaining);
        if (remaining == 0) return;
        for (std::size_t p = from; p < pairs.size(); ++p) {
          x.src[kk].push_back(pairs[p].first);
          x.tgt[kk].push_back(pairs[p].second);
          ++x.counts[kk];
          pick(p, remaining - 1);
          --x.counts[kk];
          x.src[kk].pop_back();
          x.tgt[kk].pop_back();
        }
      };
      pick(0, left);
    };
    auto x = GlobularSet::empty(d);
    level(x, 0, max_cells);
  }
}

}  // namespace glob
