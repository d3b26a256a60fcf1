#include "tensortrack/beta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tensortrack/errors.hpp"

namespace tensortrack {

namespace {

struct SplitData {
    std::vector<int> parallel_dims; // blocks staying on their pair
    std::vector<int> transfer_dims; // blocks crossing between the pairs
    int transfer_total = 0;
};

// The quartic bubble has two pair splittings: keep the built-in pairs
// {(w0,b0),(w1,b1)} or cross them. A sigma line transfers exactly the blocks
// whose matching crosses the chosen splitting.
SplitData analyze_splitting(const ModelSpec& model, const ColoredGraph& bubble, bool crossed) {
    SplitData s;
    for (int c = 0; c < bubble.rank; ++c) {
        const int image = bubble.matchings[static_cast<std::size_t>(c)][0];
        const bool crosses = crossed ? (image == 0) : (image == 1);
        const int dim = model.block_dims[static_cast<std::size_t>(c)];
        if (crosses) {
            s.transfer_dims.push_back(dim);
            s.transfer_total += dim;
        } else {
            s.parallel_dims.push_back(dim);
        }
    }
    std::sort(s.transfer_dims.begin(), s.transfer_dims.end());
    std::sort(s.parallel_dims.begin(), s.parallel_dims.end());
    return s;
}

IntermediateFieldMap base_map(const std::string& shape, int npoints, int nlines,
                              const std::string& channel, int loop_dim, bool routed) {
    IntermediateFieldMap m;
    m.shape = shape;
    m.npoints = npoints;
    m.crossings.assign(static_cast<std::size_t>(nlines), false);
    m.channel = channel;
    m.loop_dim = loop_dim;
    m.delta = loop_dim - 2 * nlines;
    m.divergent = m.delta >= 0;
    m.routed = routed;
    m.weight = 1;
    return m;
}

} // namespace

OneLoopReport enumerate_one_loop(const ModelSpec& model) {
    const ColoredGraph bubble = model_bubbles(model)[0];
    const SplitData direct = analyze_splitting(model, bubble, false);
    const SplitData crossed = analyze_splitting(model, bubble, true);
    const int total = model.total_dim();
    const int transfer = direct.transfer_total;
    const bool tensor = model.kind == ModelKind::Tensor;
    const std::string same_channel = tensor ? "c,c" : "";
    const std::string one_channel = tensor ? "c" : "";

    OneLoopReport report;
    // Equality of the transfer multisets plus genuinely distinct splittings.
    report.crossing_symmetric = direct.transfer_dims == crossed.transfer_dims &&
                                direct.parallel_dims == crossed.parallel_dims &&
                                transfer > 0 && transfer < total;

    if (report.crossing_symmetric) {
        // The per-line flips generate the orbit; every member inherits the
        // base map's weight and divergence from the crossing symmetry.
        IntermediateFieldMap tree = base_map("tree", 4, 2, same_channel, total - transfer, false);
        for (int flips = 0; flips < 4; ++flips) {
            IntermediateFieldMap m = tree;
            m.crossings = {(flips & 1) != 0, (flips & 2) != 0};
            if (flips == 3) m.shape = "ladder";
            report.four_point.push_back(std::move(m));
        }
        // The fully crossed member admits a direct reading as a ladder whose
        // loop sum is exactly the transferred blocks; both views must agree.
        const bool ladder_divergent = transfer - 4 >= 0;
        if (ladder_divergent != tree.divergent)
            throw InternalConsistencyError("crossing orbit and direct ladder analysis disagree on the "
                                           "4-point divergence");

        IntermediateFieldMap tad = base_map("tadpole", 2, 1, one_channel, total - transfer, transfer > 0);
        report.two_point.push_back(tad);
        IntermediateFieldMap self = tad;
        self.crossings = {true};
        self.shape = "selfpair";
        report.two_point.push_back(self);
        const bool self_divergent = transfer - 2 >= 0;
        const bool self_routed = total - transfer > 0;
        if (self_divergent != tad.divergent || self_routed != tad.routed)
            throw InternalConsistencyError("crossing orbit and direct self-pair analysis disagree on "
                                           "the 2-point divergence");
    } else {
        report.four_point.push_back(base_map("tree", 4, 2, same_channel, total - transfer, false));
        if (tensor)
            report.four_point.push_back(base_map("tree", 4, 2, "c,c'", total - 2 * transfer, false));
        report.four_point.push_back(base_map("ladder", 4, 2, same_channel, transfer, false));

        report.two_point.push_back(base_map("tadpole", 2, 1, one_channel, total - transfer, transfer > 0));
        report.two_point.push_back(base_map("selfpair", 2, 1, one_channel, transfer, total - transfer > 0));
    }
    return report;
}

BetaCoefficients one_loop_coefficients(const ModelSpec& model) {
    const OneLoopReport report = enumerate_one_loop(model);
    BetaCoefficients c;
    for (const auto& m : report.four_point)
        if (m.divergent) c.a += m.weight;
    for (const auto& m : report.two_point)
        if (m.divergent && m.routed) c.b += m.weight;
    c.beta2_pi2_multiple = 2 * (c.a - 2 * c.b);
    c.beta2 = static_cast<double>(c.a - 2 * c.b) * 2.0 * std::numbers::pi * std::numbers::pi;
    return c;
}

double rescaled_bare_coupling(double g_r, int cutoff, double beta2, double finite) {
    if (cutoff < 1)
        throw InvalidArgumentError("rescaled_bare_coupling needs cutoff >= 1, got " +
                                   std::to_string(cutoff));
    if (!std::isfinite(g_r) || !std::isfinite(beta2) || !std::isfinite(finite))
        throw InvalidArgumentError("rescaled_bare_coupling needs finite inputs");
    return g_r * (1.0 + beta2 * g_r * (std::log(static_cast<double>(cutoff)) + finite));
}

RGTrajectory integrate_flow(double g0, double beta2, double t_max, int steps) {
    if (steps < 1) throw InvalidArgumentError("integrate_flow needs steps >= 1");
    if (!(t_max > 0.0)) throw InvalidArgumentError("integrate_flow needs t_max > 0");
    if (!std::isfinite(g0) || !std::isfinite(beta2))
        throw InvalidArgumentError("integrate_flow needs finite inputs");

    RGTrajectory traj;
    traj.t.reserve(static_cast<std::size_t>(steps) + 1);
    traj.g.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(steps);
        const double denom = 1.0 - beta2 * g0 * t;
        if (denom <= 0.0) {
            const double pole = 1.0 / (beta2 * g0);
            throw PoleCrossingError("coupling flow crosses its pole at t = " + std::to_string(pole) +
                                    " inside [0, " + std::to_string(t_max) + "]");
        }
        traj.t.push_back(t);
        traj.g.push_back(g0 / denom);
    }
    return traj;
}

double max_flow_residual(const RGTrajectory& traj, double beta2) {
    if (traj.t.size() < 2) throw InvalidArgumentError("trajectory needs at least two samples");
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < traj.t.size(); ++i) {
        const double dt = traj.t[i + 1] - traj.t[i];
        const double mid = 0.5 * (traj.g[i] + traj.g[i + 1]);
        const double defect = std::abs((traj.g[i + 1] - traj.g[i]) / dt - beta2 * mid * mid);
        worst = std::max(worst, defect);
    }
    return worst;
}

} // namespace tensortrack
