#include "dtabias/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace dtabias {

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open file for checksum: " + path.string());
    std::uint64_t hash = 0xCBF29CE484222325ull;
    char buf[1 << 16];
    while (is.read(buf, sizeof buf) || is.gcount() > 0) {
        const std::streamsize got = is.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001B3ull;
        }
        if (!is) break;
    }
    return hash;
}

std::string checksum_string(std::uint64_t hash) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string current_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest read_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is) throw std::runtime_error("cannot open manifest: " + manifest_path.string());
    nlohmann::json j = nlohmann::json::parse(is);
    RunManifest m;
    m.tool_version = j.value("tool_version", "");
    m.command_line = j.value("command_line", "");
    m.master_seed = j.value("master_seed", std::uint64_t{0});
    m.timestamp = j.value("timestamp", "");
    for (const auto& s : j.value("scenarios", nlohmann::json::array())) {
        m.scenarios.push_back(s.get<std::string>());
    }
    for (const auto& e : j.value("outputs", nlohmann::json::array())) {
        m.outputs.push_back({e.at("path").get<std::string>(), e.at("checksum").get<std::string>()});
    }
    return m;
}

void update_manifest(const std::filesystem::path& out_dir, const RunManifest& patch) {
    const std::filesystem::path path = out_dir / "manifest.json";
    RunManifest merged = patch;
    if (std::filesystem::exists(path)) {
        const RunManifest existing = read_manifest(path);
        for (const std::string& s : existing.scenarios) {
            if (std::find(merged.scenarios.begin(), merged.scenarios.end(), s) ==
                merged.scenarios.end()) {
                merged.scenarios.push_back(s);
            }
        }
        std::vector<ManifestEntry> outputs = existing.outputs;
        for (const ManifestEntry& e : patch.outputs) {
            auto it = std::find_if(outputs.begin(), outputs.end(),
                                   [&](const ManifestEntry& o) { return o.path == e.path; });
            if (it != outputs.end()) *it = e;
            else outputs.push_back(e);
        }
        merged.outputs = std::move(outputs);
    }
    std::sort(merged.outputs.begin(), merged.outputs.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });

    nlohmann::ordered_json j;
    j["tool_version"] = merged.tool_version;
    j["command_line"] = merged.command_line;
    j["master_seed"] = merged.master_seed;
    j["scenarios"] = merged.scenarios;
    j["timestamp"] = merged.timestamp;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const ManifestEntry& e : merged.outputs) {
        outs.push_back({{"path", e.path}, {"checksum", e.checksum}});
    }
    j["outputs"] = outs;

    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write manifest: " + path.string());
    os << j.dump(2) << '\n';
}

}  // namespace dtabias
