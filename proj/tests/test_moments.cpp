#include <cmath>

#include <doctest.h>

#include "hawkes/cgf.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/moments.hpp"

using hawkes::ExcitationKernel;
using hawkes::MarkDistribution;
using hawkes::ProcessParams;

TEST_CASE("LLN means") {
    const ProcessParams poisson(1.0, ExcitationKernel::from_weights({}),
                                MarkDistribution::constant(1.0));
    CHECK(hawkes::lln_mean_n(poisson) == doctest::Approx(1.0));

    const ProcessParams hawkes_const(
        1.0, ExcitationKernel::from_weights({0.5}),
        MarkDistribution::constant(1.0));
    CHECK(hawkes::lln_mean_n(hawkes_const) == doctest::Approx(2.0));

    const ProcessParams hawkes_exp(
        1.0, ExcitationKernel::from_weights({0.5}),
        MarkDistribution::exponential_rate(2.0));
    CHECK(hawkes::lln_mean_l(hawkes_exp) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("CLT variances") {
    const ProcessParams p(1.0, ExcitationKernel::from_weights({0.5}),
                          MarkDistribution::constant(1.0));
    CHECK(hawkes::clt_var_n(p) == doctest::Approx(8.0));
    CHECK(hawkes::clt_var_l(p) == doctest::Approx(8.0));

    const ProcessParams poisson(1.3, ExcitationKernel::from_weights({}),
                                MarkDistribution::constant(1.0));
    CHECK(hawkes::clt_var_n(poisson) == doctest::Approx(1.3));
}

TEST_CASE("over-dispersion relative to Poisson on a grid") {
    for (double h : {0.1, 0.3, 0.5, 0.7}) {
        for (double beta : {1.0, 2.0, 4.0}) {
            const ProcessParams p(
                1.0, ExcitationKernel::from_weights({h}),
                MarkDistribution::exponential_rate(beta));
            const double margin =
                hawkes::stability_margin(p.kernel, p.marks);
            if (!(margin > 0.0)) {
                continue;
            }
            const double mean = hawkes::lln_mean_n(p);
            CHECK(hawkes::clt_var_n(p) >=
                  mean / (margin * margin) - 1e-12);
            CHECK(hawkes::clt_var_n(p) >= mean - 1e-12);
        }
    }
}

TEST_CASE("variances grow toward the stability boundary") {
    const auto marks = MarkDistribution::constant(1.0);
    double prev_n = 0.0;
    double prev_l = 0.0;
    for (double h : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const ProcessParams p(1.0, ExcitationKernel::from_weights({h}),
                              marks);
        const double vn = hawkes::clt_var_n(p);
        const double vl = hawkes::clt_var_l(p);
        CHECK(vn > prev_n);
        CHECK(vl > prev_l);
        prev_n = vn;
        prev_l = vl;
    }
}

TEST_CASE("CLT variance equals the CGF curvature at zero") {
    const ProcessParams configs[] = {
        ProcessParams(1.0, ExcitationKernel::from_weights({0.5}),
                      MarkDistribution::constant(1.0)),
        ProcessParams(0.7, ExcitationKernel::from_weights({0.3, 0.1}),
                      MarkDistribution::exponential_rate(2.0)),
    };
    const double step = 1e-5;
    for (const auto& p : configs) {
        const double curvature = (hawkes::gamma_prime_n(p, step) -
                                  hawkes::gamma_prime_n(p, -step)) /
                                 (2.0 * step);
        CHECK(curvature ==
              doctest::Approx(hawkes::clt_var_n(p)).epsilon(1e-4));
    }
}
