#pragma once

#include <array>
#include <vector>

namespace tensortrack {

// S(N) = sum over q in [-N, N]^4 of 1 / (q^2 + m^2)^2, evaluated exactly by
// collapsing the box to a histogram of squared norms (sign symmetry and
// radial grouping), then Kahan-summing shells from large to small norm.
double divergent_sum(int box, double mass2);

struct LogFit {
    std::vector<std::pair<double, double>> samples; // (N, S(N))
    double slope = 0.0;                             // dS / d(log N)
    double intercept = 0.0;
    double residual_norm = 0.0;
};

// Least-squares line through (log N_i, S_i). Needs >= 3 samples with at
// least two distinct N.
LogFit fit_log_slope(const std::vector<std::pair<double, double>>& samples);

struct SubtractionCheck {
    double extrapolated = 0.0;  // limit of [C(q^2+p^2) - C(q^2)] / p^2 as p -> 0
    double closed_form = 0.0;   // -1 / (q^2 + m^2)^2
    double relative_error = 0.0;
};

// Numerically confirm that subtracting propagators at shifted momentum and
// dividing by the shift converges to minus the squared propagator. The p
// values must be positive and strictly decreasing; Richardson/Neville
// extrapolation in p^2 supplies the limit.
SubtractionCheck subtraction_identity_check(const std::array<int, 4>& q, double mass2,
                                            const std::vector<double>& p_values);

std::vector<double> default_subtraction_offsets();

// d/dm [1/(p^2+m^2)]-style sensitivity probe: p / (p^2 + m^2), maximal at
// p = sqrt(m^2) with value 1 / (2 sqrt(m^2)).
double propagator_variation(double p, double mass2);

} // namespace tensortrack
