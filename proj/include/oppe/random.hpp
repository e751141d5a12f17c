#pragma once

#include <cstdint>
#include <random>

namespace oppe {

/// The random stream every sampler takes explicitly. There is no global RNG.
using RandomStream = std::mt19937_64;

namespace random {

/// Uniform draw on the open interval (0, 1) from the top 53 bits of one word.
/// The mapping is fixed here rather than left to the standard library so that
/// a seed produces the same variates on every toolchain.
double uniform_open(RandomStream& rng);

/// Gamma(shape, rate) for an integer shape, as a sum of `shape` exponentials.
double gamma_integer_shape(RandomStream& rng, unsigned shape, double rate);

/// Counter-based seed derivation (splitmix64 finalizer over the inputs), so
/// sub-streams for cells, replicates and retries never share a sequence.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

}  // namespace random
}  // namespace oppe
