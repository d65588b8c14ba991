#pragma once

#include <string>

#include "dpoly/rational.hpp"

namespace dpoly {

// Bond disorder laws, all standardized to mean 0 and variance 1. Every
// listed law has an entire moment generating function; beta_max only
// guards exp overflow in downstream formulas.
enum class DisorderKind {
    standard_gaussian,
    rademacher,
    standardized_bernoulli,
    standardized_uniform,
};

struct DisorderModel {
    DisorderKind kind = DisorderKind::standard_gaussian;
    double p = 0.5;  // bernoulli success probability; unused otherwise

    double beta_max() const { return 20.0; }
};

DisorderModel gaussian_model();
DisorderModel rademacher_model();
DisorderModel bernoulli_model(double p);
DisorderModel uniform_model();

std::string model_name(const DisorderModel& model);
// Accepts gaussian | rademacher | bernoulli | uniform; p applies to bernoulli.
DisorderModel model_from_name(const std::string& name, double p = 0.5);

// Lambda(beta) = log E[exp(beta * omega)].
double log_mgf(const DisorderModel& model, double beta);

// Var(exp(beta omega) / E[exp(beta omega)]) = exp(Lambda(2b) - 2 Lambda(b)) - 1,
// evaluated through per-model cancellation-free forms so the absolute error
// scales with the value, not with machine epsilon. The extended variant
// backs the moment ladder, whose top rungs amplify initial-value error
// by n^2.
double tilted_variance(const DisorderModel& model, double beta);
long double tilted_variance_ext(const DisorderModel& model, long double beta);

// tau = E[omega^3] of the standardized law, analytic per kind.
double skew(const DisorderModel& model);

// Fine-tuned inverse-temperature schedule
//   beta_{n,r} = kappa/sqrt(n) - tau kappa^2/(2n)
//              + kappa eta log n / n^{3/2} + kappa r / n^{3/2}.
struct BetaSchedule {
    int b;
    double tau;
    double r;
};

BetaSchedule schedule_for(const DisorderModel& model, int b, double r);
double beta_schedule(const BetaSchedule& schedule, long long n);

// Inverse of tilted_variance on beta >= 0 (strictly increasing there).
double beta_for_variance(const DisorderModel& model, double x);
long double beta_for_variance_ext(const DisorderModel& model, long double x);

// m-th centered moment of the normalized weight W = e^{beta omega - Lambda}:
// binomial sum over exp(Lambda(k beta) - k Lambda(beta)), evaluated in
// 50-digit floats because the terms cancel to O(beta^m).
double initial_moment(const DisorderModel& model, double beta, int m);

// One rung of the variance-form diagnostic: how far the schedule's tilted
// variance sits from the target kappa^2 (1/n + eta log n/n^2 + r/n^2),
// reported under both n^2 and n^{3/2} scalings.
struct VFormDiagnostic {
    long long n = 0;
    double beta = 0;
    double variance = 0;
    double target = 0;
    double residual = 0;
    double scaled_n2 = 0;
    double scaled_n32 = 0;
};

VFormDiagnostic v_form_check(const DisorderModel& model, const BetaSchedule& schedule,
                             long long n);

// Exact two-point surrogate for enumeration oracles: the weight values are
// dyadic roundings renormalized so the mean is exactly 1 in rational
// arithmetic. Only defined for the two-point laws.
struct TwoPointExact {
    Rational w_hi, w_lo;
    Rational p_hi, p_lo;
};

TwoPointExact exact_two_point(const DisorderModel& model, double beta, int bits = 40);

}  // namespace dpoly
