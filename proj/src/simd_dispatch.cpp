// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "agesirs/model.h"
#include "agesirs/simd.h"
#include "simd_internal.h"

namespace agesirs {

bool avx2_available() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const char* preferred_backend() { return avx2_available() ? "avx2" : "scalar"; }

namespace {

// Merge one member curve into the running per-node mean / squared-deviation
// accumulators (Welford). Member order is fixed, so the reduction is
// deterministic and identical for both back-ends.
void welford_merge(std::vector<double>& mean, std::vector<double>& m2,
                   const double* x, double count) {
  const std::size_t n = mean.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double d = x[j] - mean[j];
    mean[j] += d / count;
    m2[j] += d * (x[j] - mean[j]);
  }
}

void store_strided(EnsembleResult& out, const double* itot,
                   const std::vector<std::int64_t>& nodes) {
  std::vector<double> c(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    c[i] = itot[static_cast<std::size_t>(nodes[i])];
  out.curves.push_back(std::move(c));
}

}  // namespace

EnsembleResult integrate_ensemble(const std::vector<EnsembleMember>& members,
                                  const State& y0, const Grid& grid,
                                  const EnsembleOptions& opt) {
  validate(grid);
  validate_state(y0);
  if (members.empty()) throw DomainError("integrate_ensemble: no members");
  for (const auto& m : members) validate(m.params);
  const std::int64_t stride = opt.curve_stride < 1 ? 1 : opt.curve_stride;

  EnsembleResult out;
  const std::size_t nn = static_cast<std::size_t>(grid.n_steps) + 1;
  out.mean.assign(nn, 0.0);
  out.mse.assign(nn, 0.0);
  for (std::int64_t k = 0; k < grid.n_steps; k += stride)
    out.curve_nodes.push_back(k);
  out.curve_nodes.push_back(grid.n_steps);
  out.finite.resize(members.size());

  const bool use_avx2 = avx2_available() && !opt.force_scalar;
  out.backend = use_avx2 ? "avx2" : "scalar";

  std::vector<double> m2(nn, 0.0);
  std::size_t i = 0;
  double count = 0.0;
  if (use_avx2) {
    std::vector<double> lane_buf(4 * nn);
    double* lanes[4] = {lane_buf.data(), lane_buf.data() + nn,
                        lane_buf.data() + 2 * nn, lane_buf.data() + 3 * nn};
    for (; i + 4 <= members.size(); i += 4) {
      bool ok[4];
      detail::ensemble_block4_avx2(&members[i], y0, grid, lanes, ok);
      for (int l = 0; l < 4; ++l) {
        out.finite[i + l] = ok[l] ? 1 : 0;
        count += 1.0;
        welford_merge(out.mean, m2, lanes[l], count);
        store_strided(out, lanes[l], out.curve_nodes);
      }
    }
  }
  std::vector<double> buf(nn);
  for (; i < members.size(); ++i) {
    const bool ok = detail::ensemble_member_scalar(members[i], y0, grid, buf.data());
    out.finite[i] = ok ? 1 : 0;
    count += 1.0;
    welford_merge(out.mean, m2, buf.data(), count);
    store_strided(out, buf.data(), out.curve_nodes);
  }
  for (std::size_t j = 0; j < nn; ++j) out.mse[j] = m2[j] / count;
  return out;
}

}  // namespace agesirs
