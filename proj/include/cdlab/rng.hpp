#ifndef CDLAB_RNG_HPP
#define CDLAB_RNG_HPP

#include <cstdint>
#include <random>

#include "cdlab/types.hpp"

namespace cdlab {

/// Seed used by every randomized check unless overridden.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Random engine for all sampling: 64-bit Mersenne Twister.
using Engine = std::mt19937_64;

/// Independent stream `index` derived from a master seed. Streams are keyed
/// only by (master, index), never by worker count or scheduling.
inline Engine make_stream(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Engine(seq);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection (unbiased, platform independent).
inline int uniform_index(Engine& eng, int n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = Engine::max() - Engine::max() % range;
  std::uint64_t v;
  do v = eng();
  while (v >= limit);
  return static_cast<int>(v % range);
}

/// Entries uniform on the unit square [0,1) x [0,1) of the complex plane.
inline MatrixXc random_complex_matrix(Eigen::Index rows, Eigen::Index cols, Engine& eng) {
  MatrixXc m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = uniform01(eng);
      m(i, j) = cplx(re, uniform01(eng));
    }
  return m;
}

inline VectorXr random_real_vector(Eigen::Index n, Engine& eng, double lo = -1.0, double hi = 1.0) {
  VectorXr v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = lo + (hi - lo) * uniform01(eng);
  return v;
}

}  // namespace cdlab

#endif  // CDLAB_RNG_HPP
