#pragma once

#include <vector>

#include "slabflow/field.hpp"

namespace slabflow {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Time jet of a field: jet[k] = d_t^k f.
template <Support S>
using Jet = std::vector<Field<S>>;

/// Faa di Bruno: given the jet g[0..n] of an inner function and derivatives
/// fd[k] = f^(k)(g[0]) for k = 1..n, returns d_t^n f(g) for n = order.
/// Uses the partial Bell polynomial recursion
///   B_{n,k} = sum_{i=1}^{n-k+1} C(n-1, i-1) g_i B_{n-i,k-1}.
template <Support S>
Field<S> faa_di_bruno(const std::vector<Field<S>>& fd, const Jet<S>& g, int order) {
  const GridPtr& grid = g[0].grid();
  // bell[n][k] for n <= order
  std::vector<std::vector<Field<S>>> bell(order + 1, std::vector<Field<S>>(order + 1));
  bell[0][0] = Field<S>(grid, 1.0);
  for (int n = 1; n <= order; ++n)
    for (int k = 1; k <= n; ++k) {
      Field<S> acc(grid);
      for (int i = 1; i <= n - k + 1; ++i) {
        if (bell[n - i][k - 1].empty()) continue;
        acc.axpy(binomial(n - 1, i - 1), g[i] * bell[n - i][k - 1]);
      }
      bell[n][k] = std::move(acc);
    }
  Field<S> out(grid);
  for (int k = 1; k <= order; ++k) out += fd[k] * bell[order][k];
  return out;
}

}  // namespace slabflow
