#pragma once

#include <array>
#include <cstdint>

namespace hawkes {

// Counter-based generator (Philox 4x32-10, Salmon et al. 2011).
//
// A stream is identified by (seed, stream_id); path i of a Monte Carlo
// batch uses stream_id = i, so draws are independent of execution order
// and worker count.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on the open interval (0, 1).
    double next_double();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> block_;
    int pos_;
};

// Exact Poisson sampler: inversion below mean 10, transformed
// rejection (PTRS, Hoermann 1993) above.
std::uint64_t sample_poisson(CounterRng& rng, double mean);

// Standard normal via Box-Muller (one of the pair is discarded so the
// draw count per call is fixed).
double sample_standard_normal(CounterRng& rng);

// Gamma(shape, scale = 1) via Marsaglia-Tsang, boosted for shape < 1.
double sample_standard_gamma(CounterRng& rng, double shape);

std::uint64_t splitmix64(std::uint64_t x);

} // namespace hawkes
