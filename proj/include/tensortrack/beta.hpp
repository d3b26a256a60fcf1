#pragma once

#include <string>
#include <vector>

#include "tensortrack/model.hpp"

namespace tensortrack {

// A one-loop map in the intermediate-field representation: external chains
// tied to a loop by sigma lines. Each sigma line transfers the index blocks
// the quartic vertex routes across its pair splitting; what the loop still
// sums freely decides divergence. When the vertex is crossing symmetric the
// per-line flips generate an orbit of maps that diverge together.
struct IntermediateFieldMap {
    std::string shape;           // "tree", "ladder", "tadpole", "selfpair"
    int npoints = 0;             // 4 or 2
    std::vector<bool> crossings; // flip state per sigma line
    std::string channel;         // tensor: which interaction colors, else ""
    int loop_dim = 0;            // cutoff weight of the free loop sum
    int delta = 0;               // loop_dim minus 2 per propagator of the loop
    bool divergent = false;
    bool routed = false;         // 2-point only: the loop sees external momentum
    long long weight = 0;
};

struct OneLoopReport {
    bool crossing_symmetric = false;
    std::vector<IntermediateFieldMap> four_point;
    std::vector<IntermediateFieldMap> two_point;
};

OneLoopReport enumerate_one_loop(const ModelSpec& model);

// a: summed weight of divergent 4-point maps (per interaction channel).
// b: summed weight of divergent 2-point maps that route external momentum
//    through the loop (pure mass renormalizations do not wavefunction-rescale).
struct BetaCoefficients {
    long long a = 0;
    long long b = 0;
    long long beta2_pi2_multiple = 0; // 2 * (a - 2b)
    double beta2 = 0.0;               // (a - 2b) * 2 * pi^2
};

BetaCoefficients one_loop_coefficients(const ModelSpec& model);

// One-loop relation between bare and renormalized coupling at cutoff N:
// g_b = g_r * (1 + beta2 * g_r * (log N + finite)).
double rescaled_bare_coupling(double g_r, int cutoff, double beta2, double finite = 0.0);

struct RGTrajectory {
    std::vector<double> t;
    std::vector<double> g;
};

// Closed-form solution g(t) = g0 / (1 - beta2 * g0 * t) sampled on a uniform
// grid; throws PoleCrossingError when the denominator vanishes in range.
RGTrajectory integrate_flow(double g0, double beta2, double t_max, int steps);

// Largest midpoint defect |dg/dt - beta2 * g^2| over the sampled trajectory.
double max_flow_residual(const RGTrajectory& traj, double beta2);

} // namespace tensortrack
