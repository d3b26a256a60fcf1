#include "tensortrack/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "tensortrack/errors.hpp"
#include "tensortrack/threads.hpp"

namespace tensortrack {

namespace {

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// counts[s] = number of 1-d lattice points x in [-N, N] with x^2 = s.
std::vector<std::uint64_t> axis_histogram(int box) {
    std::vector<std::uint64_t> h(static_cast<std::size_t>(box) * static_cast<std::size_t>(box) + 1, 0);
    h[0] = 1;
    for (int x = 1; x <= box; ++x) h[static_cast<std::size_t>(x) * static_cast<std::size_t>(x)] = 2;
    return h;
}

// out[s + x^2] += in[s] * counts(x): one more coordinate folded in.
std::vector<std::uint64_t> convolve_axis(const std::vector<std::uint64_t>& in, int box) {
    const std::size_t n2 = static_cast<std::size_t>(box) * static_cast<std::size_t>(box);
    std::vector<std::uint64_t> out(in.size() + n2, 0);
    for (std::size_t s = 0; s < in.size(); ++s) {
        const std::uint64_t v = in[s];
        if (v == 0) continue;
        out[s] += v;
        for (int x = 1; x <= box; ++x)
            out[s + static_cast<std::size_t>(x) * static_cast<std::size_t>(x)] += 2 * v;
    }
    return out;
}

} // namespace

double divergent_sum(int box, double mass2) {
    if (box < 0) throw InvalidArgumentError("divergent_sum needs box >= 0, got " + std::to_string(box));
    if (!(mass2 > 0.0)) throw InvalidArgumentError("divergent_sum needs mass2 > 0");
    if (box == 0) return 1.0 / (mass2 * mass2);
    if (box > 4096) throw ResourceLimitError("divergent_sum limited to box <= 4096");

    const auto h1 = axis_histogram(box);
    const auto h2 = convolve_axis(h1, box);
    const auto h3 = convolve_axis(h2, box);
    const auto h4 = convolve_axis(h3, box);

    // Shells are summed from the largest squared norm down so the tiny tail
    // terms accumulate first; chunk boundaries are fixed, making the result
    // identical for any worker count.
    const std::uint64_t total = h4.size();
    const std::uint64_t chunk = 1 << 16;
    std::vector<double> partial(static_cast<std::size_t>(chunk_count(total, chunk)), 0.0);
    parallel_chunks(total, chunk, [&](std::size_t ci, std::uint64_t lo, std::uint64_t hi) {
        Kahan acc;
        for (std::uint64_t s = hi; s-- > lo;) {
            const std::uint64_t count = h4[static_cast<std::size_t>(s)];
            if (count == 0) continue;
            const double d = static_cast<double>(s) + mass2;
            acc.add(static_cast<double>(count) / (d * d));
        }
        partial[ci] = acc.sum;
    });
    Kahan out;
    for (std::size_t ci = partial.size(); ci-- > 0;) out.add(partial[ci]);
    return out.sum;
}

LogFit fit_log_slope(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3)
        throw InvalidArgumentError("fit_log_slope needs at least 3 samples, got " +
                                   std::to_string(samples.size()));
    for (const auto& [n, s] : samples)
        if (!(n > 0.0)) throw InvalidArgumentError("fit_log_slope needs positive N values");

    double xbar = 0.0, ybar = 0.0;
    for (const auto& [n, s] : samples) {
        xbar += std::log(n);
        ybar += s;
    }
    xbar /= static_cast<double>(samples.size());
    ybar /= static_cast<double>(samples.size());

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, s] : samples) {
        const double dx = std::log(n) - xbar;
        sxx += dx * dx;
        sxy += dx * (s - ybar);
    }
    if (sxx == 0.0)
        throw InvalidArgumentError("fit_log_slope has a degenerate design: all N equal");

    LogFit fit;
    fit.samples = samples;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double rss = 0.0;
    for (const auto& [n, s] : samples) {
        const double r = s - (fit.intercept + fit.slope * std::log(n));
        rss += r * r;
    }
    fit.residual_norm = std::sqrt(rss);
    return fit;
}

std::vector<double> default_subtraction_offsets() {
    std::vector<double> ps;
    double p = 1.0;
    for (int i = 0; i < 7; ++i) {
        ps.push_back(p);
        p *= 0.5;
    }
    return ps;
}

SubtractionCheck subtraction_identity_check(const std::array<int, 4>& q, double mass2,
                                            const std::vector<double>& p_values) {
    if (!(mass2 > 0.0)) throw InvalidArgumentError("subtraction check needs mass2 > 0");
    if (p_values.size() < 2)
        throw InvalidArgumentError("subtraction check needs at least 2 offsets");
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        if (!(p_values[i] > 0.0))
            throw InvalidArgumentError("subtraction offsets must be positive");
        if (i > 0 && !(p_values[i] < p_values[i - 1]))
            throw InvalidArgumentError("subtraction offsets must be strictly decreasing");
    }

    double q2 = 0.0;
    for (int qi : q) q2 += static_cast<double>(qi) * static_cast<double>(qi);
    const double base = q2 + mass2;

    // Difference quotients in x = p^2, then Neville extrapolation to x = 0.
    const std::size_t n = p_values.size();
    std::vector<double> x(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = p_values[i] * p_values[i];
        f[i] = (1.0 / (base + x[i]) - 1.0 / base) / x[i];
    }
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            f[i] = ((0.0 - x[i + level]) * f[i] - (0.0 - x[i]) * f[i + 1]) / (x[i] - x[i + level]);

    SubtractionCheck out;
    out.extrapolated = f[0];
    out.closed_form = -1.0 / (base * base);
    out.relative_error = std::abs(out.extrapolated - out.closed_form) / std::abs(out.closed_form);
    return out;
}

double propagator_variation(double p, double mass2) {
    if (!(mass2 > 0.0)) throw InvalidArgumentError("propagator_variation needs mass2 > 0");
    if (!std::isfinite(p)) throw InvalidArgumentError("propagator_variation needs finite p");
    return p / (p * p + mass2);
}

} // namespace tensortrack
