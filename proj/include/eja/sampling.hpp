#pragma once

#include <cstddef>
#include <cstdint>

#include "eja/algebra.hpp"
#include "eja/spectral.hpp"
#include "eja/transforms.hpp"

namespace eja {

/// Per-sample seed: splitmix64 of the base seed mixed with the index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Frame of the spectral decomposition of a random element.
JordanFrame random_frame(const DescriptorPtr& d, Rng& rng);
/// Cone element with eigenvalues ~ U[0, max_eig] on a random frame.
Element sample_cone(const DescriptorPtr& d, Rng& rng, double max_eig = 10.0);
/// Gaussian coordinates with standard deviation `scale`.
Element sample_general(const DescriptorPtr& d, Rng& rng, double scale = 3.0);
/// Eigenvalues of random sign with magnitudes ~ U[lo, hi] on a random frame.
Element sample_invertible(const DescriptorPtr& d, Rng& rng, double lo = 0.1, double hi = 10.0);
/// Sum of a random nonempty subset of a random frame.
Element sample_idempotent(const DescriptorPtr& d, Rng& rng);
/// G G^T for an n x cols Gaussian G (cols = 0 means n).
SchurMatrix sample_psd_gram(std::size_t n, Rng& rng, std::size_t cols = 0);

}  // namespace eja
