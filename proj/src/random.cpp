#include "oppe/random.hpp"

#include <cmath>

namespace oppe::random {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double uniform_open(RandomStream& rng) {
    for (;;) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u > 0.0) return u;
    }
}

double gamma_integer_shape(RandomStream& rng, unsigned shape, double rate) {
    double sum = 0.0;
    for (unsigned i = 0; i < shape; ++i) {
        sum -= std::log(uniform_open(rng));
    }
    return sum / rate;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ (substream * 0xd6e8feb86659fd93ULL));
}

}  // namespace oppe::random
