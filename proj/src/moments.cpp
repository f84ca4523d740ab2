#include "hawkes/moments.hpp"

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

double margin_or_throw(const ProcessParams& params) {
    const double margin = stability_margin(params.kernel, params.marks);
    if (!(margin > 0.0)) {
        throw StabilityError("limit constants need |alpha|_1 * E[l] < 1");
    }
    return margin;
}

} // namespace

double lln_mean_n(const ProcessParams& params) {
    return params.nu / margin_or_throw(params);
}

double lln_mean_l(const ProcessParams& params) {
    return params.nu * params.marks.mean() / margin_or_throw(params);
}

double clt_var_n(const ProcessParams& params) {
    const double margin = margin_or_throw(params);
    const double h = params.kernel.l1_norm();
    return params.nu * (1.0 + h * h * params.marks.variance()) /
           (margin * margin * margin);
}

double clt_var_l(const ProcessParams& params) {
    const double margin = margin_or_throw(params);
    return params.nu * params.marks.moment(2) / (margin * margin * margin);
}

} // namespace hawkes
