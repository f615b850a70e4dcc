#pragma once

// Reproducibility envelope: every command records what it wrote, with a
// checksum per file, the master seed, and the command line. Re-running with
// the manifest's seed must reproduce identical checksums (the manifest
// itself carries a timestamp and is compared through its checksum list).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dtabias {

// FNV-1a 64-bit over the file bytes, rendered as "fnv1a64:<16 hex digits>".
std::uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string checksum_string(std::uint64_t hash);

struct ManifestEntry {
    std::string path;  // relative to the output directory
    std::string checksum;
};

struct RunManifest {
    std::string tool_version;
    std::string command_line;
    std::uint64_t master_seed = 0;
    std::vector<std::string> scenarios;
    std::string timestamp;  // ISO-8601 UTC
    std::vector<ManifestEntry> outputs;
};

// Merges `patch` into <out_dir>/manifest.json: scenario list united,
// output entries replaced by path. Creates the file if absent.
void update_manifest(const std::filesystem::path& out_dir, const RunManifest& patch);

RunManifest read_manifest(const std::filesystem::path& manifest_path);

std::string current_timestamp_utc();

}  // namespace dtabias
