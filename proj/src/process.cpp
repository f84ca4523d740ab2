#include "hawkes/process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

// Intensities past this are treated as a runaway recursion rather than
// a legitimate draw; stable parameters never get near it at desk scale.
constexpr double kIntensityCap = 1e9;

// Steps through one path, invoking on_step(lambda, z, x) per time step.
template <typename OnStep>
void step_path(const ProcessParams& params, long horizon, CounterRng& rng,
               OnStep&& on_step) {
    const auto& alpha = params.kernel.weights();
    const long K = static_cast<long>(alpha.size());

    // ring buffer of the last K mark sums, newest first via head index
    std::vector<double> recent(static_cast<std::size_t>(K), 0.0);
    long head = 0;

    for (long t = 1; t <= horizon; ++t) {
        double lambda = params.nu;
        const long lags = std::min<long>(t - 1, K);
        for (long u = 1; u <= lags; ++u) {
            const long idx = (head - u + K) % K;
            lambda += alpha[static_cast<std::size_t>(u - 1)] *
                      recent[static_cast<std::size_t>(idx)];
        }
        if (!std::isfinite(lambda) || lambda > kIntensityCap) {
            throw ResourceError("intensity overflow at step " +
                                std::to_string(t));
        }
        const std::uint64_t z = sample_poisson(rng, lambda);
        double x = 0.0;
        for (std::uint64_t j = 0; j < z; ++j) {
            x += params.marks.sample(rng);
        }
        if (K > 0) {
            recent[static_cast<std::size_t>(head)] = x;
            head = (head + 1) % K;
        }
        on_step(lambda, z, x);
    }
}

} // namespace

ProcessParams::ProcessParams(double nu_in, ExcitationKernel kernel_in,
                             MarkDistribution marks_in)
    : nu(nu_in), kernel(std::move(kernel_in)), marks(std::move(marks_in)) {
    if (!(nu > 0.0)) {
        throw std::invalid_argument("nu must be positive");
    }
    if (!(stability_margin(kernel, marks) > 0.0)) {
        throw StabilityError(
            "unstable parameters: |alpha|_1 * E[l] >= 1");
    }
}

PathRecord simulate(const ProcessParams& params, long horizon,
                    std::uint64_t seed) {
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    PathRecord path;
    path.horizon = horizon;
    path.seed = seed;
    path.lambda.reserve(static_cast<std::size_t>(horizon));
    path.z.reserve(static_cast<std::size_t>(horizon));
    path.x.reserve(static_cast<std::size_t>(horizon));
    path.n_final = 0.0;
    path.l_final = 0.0;

    CounterRng rng(seed, 0);
    step_path(params, horizon, rng,
              [&path](double lambda, std::uint64_t z, double x) {
                  path.lambda.push_back(lambda);
                  path.z.push_back(z);
                  path.x.push_back(x);
                  path.n_final += static_cast<double>(z);
                  path.l_final += x;
              });
    return path;
}

std::vector<double> replay_intensity(const PathRecord& path,
                                     const ProcessParams& params) {
    const auto& alpha = params.kernel.weights();
    const long K = static_cast<long>(alpha.size());
    std::vector<double> lambda(static_cast<std::size_t>(path.horizon));
    for (long t = 1; t <= path.horizon; ++t) {
        double acc = params.nu;
        const long lags = std::min<long>(t - 1, K);
        for (long u = 1; u <= lags; ++u) {
            acc += alpha[static_cast<std::size_t>(u - 1)] *
                   path.x[static_cast<std::size_t>(t - u - 1)];
        }
        lambda[static_cast<std::size_t>(t - 1)] = acc;
        if (acc != path.lambda[static_cast<std::size_t>(t - 1)]) {
            throw ConsistencyError(
                "stored intensity differs from replay at step " +
                std::to_string(t));
        }
    }
    return lambda;
}

PathEndpoint simulate_endpoint(const ProcessParams& params, long horizon,
                               std::uint64_t master_seed,
                               std::uint64_t path_index) {
    CounterRng rng(master_seed, path_index);
    PathEndpoint end{0.0, 0.0};
    step_path(params, horizon, rng,
              [&end](double, std::uint64_t z, double x) {
                  end.n_final += static_cast<double>(z);
                  end.l_final += x;
              });
    return end;
}

} // namespace hawkes
