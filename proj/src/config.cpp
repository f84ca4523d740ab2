#include "hawkes/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + value + "'");
    }
}

long parse_long(const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const long parsed = std::stol(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not an integer: '" + value + "'");
    }
}

std::vector<double> parse_list(const std::string& value,
                               const std::string& where) {
    std::vector<double> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(parse_double(item, where));
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

RunConfig parse_config(std::istream& in, const std::string& source_name) {
    RunConfig config;
    std::set<std::string> seen;
    std::string line;
    long line_no = 0;
    bool have_nu = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where =
            source_name + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
        const std::string ctx = where + " (" + key + ")";
        if (key == "nu") {
            config.nu = parse_double(value, ctx);
            have_nu = true;
        } else if (key == "kernel.kind") {
            config.kernel_kind = value;
        } else if (key == "kernel.weights") {
            config.kernel_weights = parse_list(value, ctx);
        } else if (key == "kernel.a") {
            config.kernel_a = parse_double(value, ctx);
        } else if (key == "kernel.r") {
            config.kernel_r = parse_double(value, ctx);
        } else if (key == "kernel.p") {
            config.kernel_p = parse_double(value, ctx);
        } else if (key == "kernel.K") {
            config.kernel_K = parse_long(value, ctx);
        } else if (key == "mark.kind") {
            config.mark_kind = value;
        } else if (key == "mark.c") {
            config.mark_c = parse_double(value, ctx);
        } else if (key == "mark.beta") {
            config.mark_beta = parse_double(value, ctx);
        } else if (key == "mark.shape") {
            config.mark_shape = parse_double(value, ctx);
        } else if (key == "mark.scale") {
            config.mark_scale = parse_double(value, ctx);
        } else if (key == "mark.values") {
            config.mark_values = parse_list(value, ctx);
        } else if (key == "mark.probs") {
            config.mark_probs = parse_list(value, ctx);
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    if (!have_nu) {
        throw ConfigError(source_name + ": missing required key 'nu'");
    }
    if (config.kernel_kind.empty()) {
        throw ConfigError(source_name +
                          ": missing required key 'kernel.kind'");
    }
    if (config.mark_kind.empty()) {
        throw ConfigError(source_name + ": missing required key 'mark.kind'");
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in, path);
}

void dump_config(const RunConfig& config, std::ostream& out) {
    out << "nu = " << format_double(config.nu) << "\n";
    out << "kernel.kind = " << config.kernel_kind << "\n";
    if (config.kernel_kind == "explicit") {
        out << "kernel.weights = " << format_list(config.kernel_weights)
            << "\n";
    } else if (config.kernel_kind == "geometric") {
        out << "kernel.a = " << format_double(config.kernel_a) << "\n";
        out << "kernel.r = " << format_double(config.kernel_r) << "\n";
        out << "kernel.K = " << config.kernel_K << "\n";
    } else if (config.kernel_kind == "power") {
        out << "kernel.a = " << format_double(config.kernel_a) << "\n";
        out << "kernel.p = " << format_double(config.kernel_p) << "\n";
        out << "kernel.K = " << config.kernel_K << "\n";
    }
    out << "mark.kind = " << config.mark_kind << "\n";
    if (config.mark_kind == "constant") {
        out << "mark.c = " << format_double(config.mark_c) << "\n";
    } else if (config.mark_kind == "exponential") {
        out << "mark.beta = " << format_double(config.mark_beta) << "\n";
    } else if (config.mark_kind == "gamma") {
        out << "mark.shape = " << format_double(config.mark_shape) << "\n";
        out << "mark.scale = " << format_double(config.mark_scale) << "\n";
    } else if (config.mark_kind == "discrete") {
        out << "mark.values = " << format_list(config.mark_values) << "\n";
        out << "mark.probs = " << format_list(config.mark_probs) << "\n";
    }
}

ProcessParams build_params(const RunConfig& config) {
    try {
        ExcitationKernel kernel = [&] {
            if (config.kernel_kind == "explicit") {
                return ExcitationKernel::from_weights(config.kernel_weights);
            }
            if (config.kernel_kind == "geometric") {
                return ExcitationKernel::geometric(
                    config.kernel_a, config.kernel_r,
                    static_cast<std::size_t>(config.kernel_K));
            }
            if (config.kernel_kind == "power") {
                return ExcitationKernel::power(
                    config.kernel_a, config.kernel_p,
                    static_cast<std::size_t>(config.kernel_K));
            }
            throw ConfigError("kernel.kind: unknown kind '" +
                              config.kernel_kind + "'");
        }();
        MarkDistribution marks = [&] {
            if (config.mark_kind == "constant") {
                return MarkDistribution::constant(config.mark_c);
            }
            if (config.mark_kind == "exponential") {
                return MarkDistribution::exponential_rate(config.mark_beta);
            }
            if (config.mark_kind == "gamma") {
                return MarkDistribution::gamma_shape_scale(
                    config.mark_shape, config.mark_scale);
            }
            if (config.mark_kind == "discrete") {
                return MarkDistribution::discrete(config.mark_values,
                                                  config.mark_probs);
            }
            throw ConfigError("mark.kind: unknown kind '" +
                              config.mark_kind + "'");
        }();
        return ProcessParams(config.nu, std::move(kernel), std::move(marks));
    } catch (const ConfigError&) {
        throw;
    } catch (const StabilityError& e) {
        throw ConfigError(std::string("nu/kernel/mark: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid parameter value: ") +
                          e.what());
    }
}

} // namespace hawkes
