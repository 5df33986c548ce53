#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace hexlc {

// Deterministic gaussian fills for seeded starts.  All stochastic choices in
// the library flow through explicitly passed 64-bit seeds.
inline Eigen::VectorXd gaussian_vector(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(gen);
  return v;
}

inline Eigen::MatrixXd gaussian_matrix(int n, int m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd a(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = nd(gen);
  return a;
}

// splittable sub-seed derivation (splitmix64 step)
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace hexlc
