#pragma once

#include <functional>

#include "glob/globular_set.hpp"
#include "glob/rng.hpp"

namespace glob {

/// A random globular set built only by attaching globes along parallel pairs, with
/// between 1 and `max_per_dim` cells in dimension 0 and up to `max_per_dim` above.
GlobularSet random_globular_set(Rng& rng, int dim_bound, std::size_t max_per_dim);

/// Every globular set with at most `max_cells` cells in total and dimension bound at
/// most `max_dim_bound`. Cells of one dimension are listed with nondecreasing boundary
/// pairs, which removes relabelings inside a dimension but not all isomorphic copies.
void for_each_small_globular_set(std::size_t max_cells, int max_dim_bound,
                                 const std::function<void(const GlobularSet&)>& visit);

}  // namespace glob
