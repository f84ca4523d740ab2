#pragma once

#include <cstdint>
#include <vector>

#include "hawkes/kernel.hpp"
#include "hawkes/marks.hpp"

namespace hawkes {

struct ProcessParams {
    double nu;
    ExcitationKernel kernel;
    MarkDistribution marks;

    // Validates nu > 0 and the subcriticality condition.
    ProcessParams(double nu_in, ExcitationKernel kernel_in,
                  MarkDistribution marks_in);
};

// One simulated trajectory: intensity, counts, mark sums per step plus
// the terminal totals N_t and L_t.
struct PathRecord {
    long horizon;
    std::vector<double> lambda;
    std::vector<std::uint64_t> z;
    std::vector<double> x;
    double n_final;
    double l_final;
    std::uint64_t seed;
};

// Fully deterministic in (params, horizon, seed).
PathRecord simulate(const ProcessParams& params, long horizon,
                    std::uint64_t seed);

// Recomputes the intensity sequence from the stored mark sums; throws
// ConsistencyError unless it matches the stored one bit for bit.
std::vector<double> replay_intensity(const PathRecord& path,
                                     const ProcessParams& params);

// Terminal (N_t, L_t) only; used by the Monte Carlo driver where whole
// trajectories would not fit in memory.
struct PathEndpoint {
    double n_final;
    double l_final;
};

PathEndpoint simulate_endpoint(const ProcessParams& params, long horizon,
                               std::uint64_t master_seed,
                               std::uint64_t path_index);

} // namespace hawkes
