#include "tensortrack/cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tensortrack/beta.hpp"
#include "tensortrack/census.hpp"
#include "tensortrack/dot.hpp"
#include "tensortrack/errors.hpp"
#include "tensortrack/gct.hpp"
#include "tensortrack/manifest.hpp"
#include "tensortrack/melons.hpp"
#include "tensortrack/model.hpp"
#include "tensortrack/moments.hpp"
#include "tensortrack/numerics.hpp"
#include "tensortrack/strands.hpp"
#include "tensortrack/version.hpp"

namespace tensortrack {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex16(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::vector<int> parse_grid(const std::string& text) {
    std::vector<int> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(item, &used);
            if (used != item.size() || n < 1) throw std::invalid_argument(item);
            grid.push_back(n);
        } catch (const std::exception&) {
            throw InvalidArgumentError("bad grid entry '" + item + "': expected positive integers");
        }
    }
    if (grid.empty()) throw InvalidArgumentError("grid must list at least one box size");
    return grid;
}

std::string jacket_label(const Jacket& j) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(j[i]);
    }
    return s + ")";
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"colored graphs, melonic power counting, and quartic-model flows",
                 kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    // enumerate
    auto* cmd_enumerate = app.add_subcommand("enumerate", "count connected invariants of a rank");
    int en_rank = 0, en_pairs = 0;
    std::string en_emit;
    std::uint64_t en_space = kDefaultCensusSpace;
    cmd_enumerate->add_option("--rank", en_rank, "number of colors")->required();
    cmd_enumerate->add_option("--pairs", en_pairs, "white/black pairs")->required();
    cmd_enumerate->add_option("--emit", en_emit, "directory for one GCT file per class");
    cmd_enumerate->add_option("--max-space", en_space, "search-space bound");
    cmd_enumerate->callback([&] {
        Timer timer;
        const CensusLevel level = enumerate_invariants(en_rank, en_pairs, !en_emit.empty(), en_space);
        out << "Z_" << en_rank << "(" << en_pairs << ") = " << level.count << "\n";
        if (!en_emit.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(en_emit, ec);
            if (ec) throw Error("cannot create directory: " + en_emit);
            const double elapsed = timer.seconds();
            for (const CanonicalForm& cf : level.forms) {
                const std::string text = serialize_gct(from_canonical(cf));
                const std::string name = hex16(fnv1a64(text)) + ".gct";
                const std::string path = en_emit + "/" + name;
                write_text_file(path, text);
                RunManifest m;
                m.subcommand = "enumerate";
                m.parameters = {{"rank", std::to_string(en_rank)},
                                {"pairs", std::to_string(en_pairs)},
                                {"emit", en_emit},
                                {"max-space", std::to_string(en_space)},
                                {"file", name}};
                m.wall_time_seconds = elapsed;
                write_manifest(m, path);
            }
            out << "emitted " << level.forms.size() << " graphs to " << en_emit << "\n";
        }
    });

    // degree
    auto* cmd_degree = app.add_subcommand("degree", "per-jacket genera and the degree");
    std::string deg_input;
    cmd_degree->add_option("--input", deg_input, "GCT file")->required();
    cmd_degree->callback([&] {
        const ColoredGraph g = load_gct(deg_input);
        const DegreeReport rep = degree(g);
        for (const auto& [jacket, genus] : rep.genera)
            out << "jacket " << jacket_label(jacket) << ": genus " << genus << "\n";
        out << "degree = " << rep.omega << "\n";
    });

    // melonic
    auto* cmd_melonic = app.add_subcommand("melonic", "test reducibility by dipole contractions");
    std::string mel_input;
    cmd_melonic->add_option("--input", mel_input, "GCT file")->required();
    cmd_melonic->callback([&] {
        const ColoredGraph g = load_gct(mel_input);
        std::vector<std::string> trace;
        const bool yes = is_melonic(g, &trace);
        out << "melonic: " << (yes ? "yes" : "no") << "\n";
        for (const std::string& line : trace) out << "  " << line << "\n";
    });

    // melons
    auto* cmd_melons = app.add_subcommand("melons", "count melonic classes of a size");
    int ml_rank = 0, ml_pairs = 0;
    std::uint64_t ml_space = kDefaultCensusSpace;
    cmd_melons->add_option("--rank", ml_rank, "number of colors")->required();
    cmd_melons->add_option("--pairs", ml_pairs, "white/black pairs")->required();
    cmd_melons->add_option("--max-space", ml_space, "search-space bound");
    cmd_melons->callback([&] {
        const CensusLevel level = melon_census(ml_rank, ml_pairs, false, ml_space);
        out << "melons_" << ml_rank << "(" << ml_pairs << ") = " << level.count << "\n";
    });

    // powercount
    auto* cmd_power = app.add_subcommand("powercount", "scan divergent diagram classes");
    std::string pc_model;
    int pc_vertices = 2;
    cmd_power->add_option("--model", pc_model, "vector, matrix, or tensor")->required();
    cmd_power->add_option("--max-vertices", pc_vertices, "vertex bound (<= 4)");
    cmd_power->callback([&] {
        const ModelSpec model = make_model(parse_model_kind(pc_model));
        const auto entries = scan_divergent(model, pc_vertices);
        out << "# hash | npoints | loops | closed | delta | class\n";
        for (const ScanEntry& e : entries)
            out << hex16(e.hash) << " | " << e.npoints << " | " << e.loops << " | "
                << e.closed_count << " | " << e.delta << " | " << e.classification << "\n";
        out << "divergent classes: " << entries.size() << "\n";
    });

    // beta
    auto* cmd_beta = app.add_subcommand("beta", "one-loop beta coefficients");
    std::string bt_model;
    cmd_beta->add_option("--model", bt_model, "vector, matrix, or tensor")->required();
    cmd_beta->callback([&] {
        const BetaCoefficients c = one_loop_coefficients(make_model(parse_model_kind(bt_model)));
        out << "a=" << c.a << " b=" << c.b << " beta2=" << c.beta2_pi2_multiple << "*pi^2 ("
            << fmt17(c.beta2) << ")\n";
    });

    // flow
    auto* cmd_flow = app.add_subcommand("flow", "sample the one-loop coupling flow");
    std::string fl_model, fl_out;
    double fl_g0 = 0.1, fl_tmax = 1.0;
    int fl_steps = 100;
    cmd_flow->add_option("--model", fl_model, "vector, matrix, or tensor")->required();
    cmd_flow->add_option("--g0", fl_g0, "initial coupling")->required();
    cmd_flow->add_option("--tmax", fl_tmax, "end of the flow window")->required();
    cmd_flow->add_option("--steps", fl_steps, "number of grid steps")->required();
    cmd_flow->add_option("--out", fl_out, "CSV output path")->required();
    cmd_flow->callback([&] {
        Timer timer;
        const BetaCoefficients c = one_loop_coefficients(make_model(parse_model_kind(fl_model)));
        const RGTrajectory traj = integrate_flow(fl_g0, c.beta2, fl_tmax, fl_steps);
        std::string csv = "t,g\n";
        for (std::size_t i = 0; i < traj.t.size(); ++i)
            csv += fmt17(traj.t[i]) + "," + fmt17(traj.g[i]) + "\n";
        write_text_file(fl_out, csv);
        RunManifest m;
        m.subcommand = "flow";
        m.parameters = {{"model", fl_model},          {"g0", fmt17(fl_g0)},
                        {"tmax", fmt17(fl_tmax)},     {"steps", std::to_string(fl_steps)},
                        {"beta2", fmt17(c.beta2)},    {"out", fl_out}};
        m.wall_time_seconds = timer.seconds();
        write_manifest(m, fl_out);
        out << "wrote " << traj.t.size() << " samples to " << fl_out << "\n";
    });

    // divsum
    auto* cmd_divsum = app.add_subcommand("divsum", "cutoff scan of the divergent bubble sum");
    double ds_mass2 = 1.0;
    std::string ds_grid = "64,128,256,512";
    std::string ds_out;
    cmd_divsum->add_option("--mass-squared", ds_mass2, "propagator mass squared");
    cmd_divsum->add_option("--grid", ds_grid, "comma-separated box sizes");
    cmd_divsum->add_option("--out", ds_out, "CSV output path")->required();
    cmd_divsum->callback([&] {
        Timer timer;
        const std::vector<int> grid = parse_grid(ds_grid);
        std::vector<std::pair<double, double>> samples;
        std::string csv = "N,S\n";
        for (int n : grid) {
            const double s = divergent_sum(n, ds_mass2);
            samples.emplace_back(static_cast<double>(n), s);
            csv += std::to_string(n) + "," + fmt17(s) + "\n";
        }
        const LogFit fit = fit_log_slope(samples);
        write_text_file(ds_out, csv);
        RunManifest m;
        m.subcommand = "divsum";
        m.parameters = {{"mass-squared", fmt17(ds_mass2)}, {"grid", ds_grid}, {"out", ds_out}};
        m.wall_time_seconds = timer.seconds();
        write_manifest(m, ds_out);
        const double two_pi2 = 19.739208802178716;
        out << "slope = " << fmt17(fit.slope) << "\n";
        out << "two_pi_squared = " << fmt17(two_pi2) << "\n";
        out << "relative_deviation = " << fmt17(std::abs(fit.slope - two_pi2) / two_pi2) << "\n";
    });

    // moment
    auto* cmd_moment = app.add_subcommand("moment", "Gaussian moment of an invariant bubble");
    std::string mo_input;
    int mo_ndim = 1;
    std::uint64_t mo_samples = 0, mo_seed = 0;
    cmd_moment->add_option("--input", mo_input, "GCT file of the bubble")->required();
    cmd_moment->add_option("--n-dim", mo_ndim, "index range N")->required();
    cmd_moment->add_option("--mc", mo_samples, "Monte Carlo sample count");
    cmd_moment->add_option("--seed", mo_seed, "Monte Carlo seed");
    cmd_moment->callback([&] {
        const ColoredGraph bubble = load_gct(mo_input);
        const MomentPolynomial poly = exact_moment(bubble);
        out << "exact = " << poly.to_string() << "\n";
        out << "value(N=" << mo_ndim << ") = " << poly.evaluate(mo_ndim) << "\n";
        if (mo_samples > 0) {
            const MonteCarloEstimate est = mc_moment(bubble, mo_ndim, mo_samples, mo_seed);
            out << "mc = " << fmt17(est.mean) << " +/- " << fmt17(est.std_error) << " (samples="
                << est.samples << ", seed=" << est.seed << ")\n";
        }
    });

    // export-dot
    auto* cmd_dot = app.add_subcommand("export-dot", "render a graph for graphviz");
    std::string xd_input, xd_out;
    cmd_dot->add_option("--input", xd_input, "GCT file")->required();
    cmd_dot->add_option("--out", xd_out, "DOT output path (default stdout)");
    cmd_dot->callback([&] {
        Timer timer;
        const std::string text = export_dot(load_gct(xd_input));
        if (xd_out.empty()) {
            out << text;
            return;
        }
        write_text_file(xd_out, text);
        RunManifest m;
        m.subcommand = "export-dot";
        m.parameters = {{"input", xd_input}, {"out", xd_out}};
        m.wall_time_seconds = timer.seconds();
        write_manifest(m, xd_out);
        out << "wrote " << xd_out << "\n";
    });

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 1;
    } catch (const PoleCrossingError& e) {
        err << "pole crossing: " << e.what() << "\n";
        return 1;
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency: " << e.what() << "\n";
        return 1;
    } catch (const MalformedGraphError& e) {
        err << "malformed graph: " << e.what() << "\n";
        return 2;
    } catch (const IncompletenessError& e) {
        err << "incomplete graph: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgumentError& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace tensortrack
