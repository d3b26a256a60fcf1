#include "tensortrack/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "tensortrack/errors.hpp"
#include "tensortrack/version.hpp"

namespace tensortrack {

void write_manifest(const RunManifest& manifest, const std::string& data_path) {
    nlohmann::json j;
    j["subcommand"] = manifest.subcommand;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : manifest.parameters) params[key] = value;
    j["parameters"] = params;
    if (manifest.seed) {
        j["seed"] = *manifest.seed;
        j["rng"] = "mt19937_64";
    } else {
        j["seed"] = nullptr;
        j["rng"] = nullptr;
    }
    j["tool_version"] = kToolVersion;
    j["wall_time_seconds"] = manifest.wall_time_seconds;

    const std::string path = data_path + ".manifest";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw Error("write failed: " + path);
}

} // namespace tensortrack
