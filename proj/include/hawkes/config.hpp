#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hawkes/process.hpp"

namespace hawkes {

// Flat `key = value` configuration ('#' starts a comment). Keys:
//   nu
//   kernel.kind = explicit | geometric | power
//   kernel.weights (comma-separated), kernel.a, kernel.r, kernel.p, kernel.K
//   mark.kind = constant | exponential | gamma | discrete
//   mark.c, mark.beta, mark.shape, mark.scale,
//   mark.values, mark.probs (comma-separated)
struct RunConfig {
    double nu = 0.0;
    std::string kernel_kind;
    std::vector<double> kernel_weights;
    double kernel_a = 0.0;
    double kernel_r = 0.0;
    double kernel_p = 0.0;
    long kernel_K = 0;
    std::string mark_kind;
    double mark_c = 0.0;
    double mark_beta = 0.0;
    double mark_shape = 0.0;
    double mark_scale = 0.0;
    std::vector<double> mark_values;
    std::vector<double> mark_probs;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::istream& in, const std::string& source_name);
RunConfig load_config(const std::string& path);

// Normalized key=value echo; reparsing it yields an equal RunConfig.
void dump_config(const RunConfig& config, std::ostream& out);

ProcessParams build_params(const RunConfig& config);

} // namespace hawkes
