/*
 Copyright 2026 The zpmsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <cstddef>
#include <vector>

namespace zpm::detail {

/// Cubic Hermite basis evaluation on one cell. s in [0, 1], slopes are
/// per unit of s (i.e. already multiplied by the cell width).
template <typename T>
T cubic_hermite(const T& p0, const T& p1, const T& m0, const T& m1, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1;
}

/// Index of the cell containing t on a uniform grid; clamps to the last
/// cell so t == t_end interpolates from the final interval.
inline std::size_t cell_index(double t, double t0, double step, std::size_t n_points) {
  if (n_points < 2) return 0;
  auto idx = static_cast<std::ptrdiff_t>((t - t0) / step);
  if (idx < 0) idx = 0;
  const auto last = static_cast<std::ptrdiff_t>(n_points) - 2;
  if (idx > last) idx = last;
  return static_cast<std::size_t>(idx);
}

/// Centered slope estimates (one sided at the ends) for Hermite
/// interpolation of sampled data; slopes are per sample spacing.
template <typename T>
std::vector<T> grid_slopes(const std::vector<T>& values) {
  std::vector<T> m(values.size());
  if (values.size() < 2) return values;
  m.front() = values[1] - values[0];
  m.back() = values[values.size() - 1] - values[values.size() - 2];
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    m[k] = 0.5 * (values[k + 1] - values[k - 1]);
  }
  return m;
}

}  // namespace zpm::detail
