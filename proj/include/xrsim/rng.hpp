/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef XRSIM_RNG_HPP
#define XRSIM_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace xrsim {

/// Finalizer of the splitmix64 generator; mixes all input bits into the output.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-drop seed derivation. Hash-mixed rather than sequential so that
/// nearby drop indices yield statistically independent streams.
inline std::uint64_t derive_drop_seed(std::uint64_t base_seed,
                                      std::uint64_t drop_index) {
  return splitmix64(base_seed ^ splitmix64(drop_index + 1));
}

using Rng = std::mt19937_64;

/// Uniform draw in (0,1]; never returns 0 so it is safe under log().
inline double uniform_unit(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via Box-Muller. Hand-rolled instead of
/// std::normal_distribution so the draw sequence does not depend on the
/// standard library implementation.
inline double gaussian(Rng& rng) {
  const double u1 = uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// Circularly-symmetric complex Gaussian with unit total variance,
/// i.e. real and imaginary parts are each N(0, 1/2).
inline std::complex<double> complex_gaussian(Rng& rng) {
  const double scale = std::sqrt(0.5);
  const double re = gaussian(rng);
  const double im = gaussian(rng);
  return {scale * re, scale * im};
}

}  // namespace xrsim

#endif  // XRSIM_RNG_HPP
