#include "hawkes/rng.hpp"

#include <cmath>

namespace hawkes {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b,
                      std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

} // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id) {
    const std::uint64_t mixed = splitmix64(seed);
    key_ = {static_cast<std::uint32_t>(mixed),
            static_cast<std::uint32_t>(mixed >> 32)};
    counter_ = {0u, 0u,
                static_cast<std::uint32_t>(stream_id),
                static_cast<std::uint32_t>(stream_id >> 32)};
    pos_ = 4;
}

void CounterRng::refill() {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kPhiloxM4x32A, ctr[0], hi0, lo0);
        mul_hi_lo(kPhiloxM4x32B, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW32A;
        key[1] += kPhiloxW32B;
    }
    block_ = ctr;
    pos_ = 0;
    if (++counter_[0] == 0) {
        ++counter_[1];
    }
}

std::uint32_t CounterRng::next_u32() {
    if (pos_ == 4) {
        refill();
    }
    return block_[pos_++];
}

std::uint64_t CounterRng::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double CounterRng::next_double() {
    // 53 random bits shifted into (0,1); never returns an endpoint.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

std::uint64_t poisson_inversion(CounterRng& rng, double mean) {
    const double q0 = std::exp(-mean);
    double u = rng.next_double();
    double p = q0;
    double cum = p;
    std::uint64_t k = 0;
    while (u > cum) {
        ++k;
        p *= mean / static_cast<double>(k);
        cum += p;
        if (p < 1e-300 && k > mean) {
            break; // tail mass below representable resolution
        }
    }
    return k;
}

std::uint64_t poisson_ptrs(CounterRng& rng, double mean) {
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::uint64_t>(kf);
        }
        if (kf < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) -
                std::log(a / (us * us) + b) <=
            kf * log_mean - mean - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

} // namespace

std::uint64_t sample_poisson(CounterRng& rng, double mean) {
    if (mean <= 0.0) {
        return 0;
    }
    if (mean < 10.0) {
        return poisson_inversion(rng, mean);
    }
    return poisson_ptrs(rng, mean);
}

double sample_standard_normal(CounterRng& rng) {
    const double u1 = rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

double sample_standard_gamma(CounterRng& rng, double shape) {
    if (shape < 1.0) {
        const double boost =
            std::pow(rng.next_double(), 1.0 / shape);
        return boost * sample_standard_gamma(rng, shape + 1.0);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

} // namespace hawkes
