#pragma once

#include <variant>
#include <vector>

#include "hawkes/rng.hpp"

namespace hawkes {

// Law of the positive i.i.d. marks. Only light-tailed families with a
// closed-form MGF are representable; the MGF domain is open and
// evaluation at or past its supremum is an error.
class MarkDistribution {
public:
    static MarkDistribution constant(double value);
    static MarkDistribution exponential_rate(double beta);
    static MarkDistribution gamma_shape_scale(double shape, double scale);
    static MarkDistribution discrete(std::vector<double> values,
                                     std::vector<double> probs);

    // E[e^{s l}] for s below mgf_domain_sup().
    double mgf(double s) const;

    // E[l e^{s l}], the derivative of mgf in s.
    double mgf_d1(double s) const;

    // E[l^k] for k in {1,2,3,4}.
    double moment(int k) const;

    double mean() const { return moment(1); }
    double variance() const;

    // Supremum of {s : E[e^{s l}] < inf}; +inf for bounded-support laws.
    double mgf_domain_sup() const;

    double sample(CounterRng& rng) const;

private:
    struct Constant {
        double value;
    };
    struct ExponentialRate {
        double beta;
    };
    struct GammaShapeScale {
        double shape;
        double scale;
    };
    struct DiscreteFinite {
        std::vector<double> values;
        std::vector<double> probs;
        std::vector<double> cdf;
    };

    using Law = std::variant<Constant, ExponentialRate, GammaShapeScale,
                             DiscreteFinite>;

    explicit MarkDistribution(Law law) : law_(std::move(law)) {}

    void require_in_domain(double s) const;

    Law law_;
};

} // namespace hawkes
