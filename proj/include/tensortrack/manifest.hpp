#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace tensortrack {

// Reproducibility sidecar written next to every emitted data file as
// "<file>.manifest": the subcommand, every resolved parameter, the RNG seed
// and engine when randomness was involved, the tool version, and the wall
// time of the producing run. Replaying the recorded invocation regenerates
// the data file bit-identically.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::optional<std::uint64_t> seed;
    double wall_time_seconds = 0.0;
};

void write_manifest(const RunManifest& manifest, const std::string& data_path);

} // namespace tensortrack
