#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "slope/types.hpp"

namespace slope {

// Stream derivation: every consumer of randomness owns a (master, stream)
// pair, so results do not depend on call order or thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x2545f4914f6cdd1dull));
}

inline std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream) {
  return std::mt19937_64(derive_seed(master, stream));
}

// Uniform in [0,1) from the top 53 bits; identical across platforms.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Marsaglia polar method; avoids the libstdc++-specific normal_distribution
// so that fixed seeds reproduce byte-identical output everywhere.
class GaussianDraw {
 public:
  double operator()(std::mt19937_64& eng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01(eng) - 1.0;
      v = 2.0 * uniform01(eng) - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline Vector gaussian_vector(Index n, std::mt19937_64& eng) {
  Vector v(n);
  GaussianDraw g;
  for (Index i = 0; i < n; ++i) v[i] = g(eng);
  return v;
}

inline Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& eng) {
  Matrix m(rows, cols);
  GaussianDraw g;
  // Row-major fill order is part of the reproducibility contract.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = g(eng);
  return m;
}

}  // namespace slope
