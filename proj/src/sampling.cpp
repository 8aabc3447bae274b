#include "eja/sampling.hpp"

#include <random>

namespace eja {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

JordanFrame random_frame(const DescriptorPtr& d, Rng& rng) {
  return spectral_decompose(random_element(d, rng, 1.0)).frame;
}

Element sample_cone(const DescriptorPtr& d, Rng& rng, double max_eig) {
  const JordanFrame f = random_frame(d, rng);
  std::uniform_real_distribution<double> u(0.0, max_eig);
  std::vector<double> c(f.size());
  for (double& v : c) v = u(rng);
  return combine(f, c);
}

Element sample_general(const DescriptorPtr& d, Rng& rng, double scale) { return random_element(d, rng, scale); }

Element sample_invertible(const DescriptorPtr& d, Rng& rng, double lo, double hi) {
  const JordanFrame f = random_frame(d, rng);
  std::uniform_real_distribution<double> u(lo, hi);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> c(f.size());
  for (double& v : c) v = (sign(rng) ? 1.0 : -1.0) * u(rng);
  return combine(f, c);
}

Element sample_idempotent(const DescriptorPtr& d, Rng& rng) {
  const JordanFrame f = random_frame(d, rng);
  std::bernoulli_distribution pick(0.5);
  std::vector<double> c(f.size(), 0.0);
  bool any = false;
  for (double& v : c) {
    v = pick(rng) ? 1.0 : 0.0;
    any = any || v != 0.0;
  }
  if (!any) c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)] = 1.0;
  return combine(f, c);
}

SchurMatrix sample_psd_gram(std::size_t n, Rng& rng, std::size_t cols) {
  if (cols == 0) cols = n;
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(n, cols);
  for (double& v : m.data()) v = g(rng);
  Matrix a = m * m.transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = a(i, j);
  return SchurMatrix(std::move(a));
}

}  // namespace eja
