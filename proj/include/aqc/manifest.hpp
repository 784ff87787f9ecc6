#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <map>
#include <string>

#include <json.hpp>

#include "aqc/rng.hpp"

namespace aqc {

inline constexpr const char* kVersion = "0.1.0";

/// Provenance block embedded in every primary output: identical manifests
/// imply identical outputs. Timestamps are omitted in deterministic mode so
/// reruns compare byte-for-byte.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> input_digests; // path -> fnv1a64:<hex>
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool deterministic = false;

    void add_input(const std::string& path, const std::string& content) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                      static_cast<unsigned long long>(fnv1a64(content.data(), content.size())));
        input_digests[path] = buf;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs"] = input_digests;
        j["parameters"] = parameters;
        j["seed"] = seed;
        j["version"] = kVersion;
        if (!deterministic) {
            const auto now = std::chrono::system_clock::now();
            const std::time_t t = std::chrono::system_clock::to_time_t(now);
            char buf[32];
            std::tm tm{};
            gmtime_r(&t, &tm);
            std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
            j["timestamp"] = buf;
        }
        return j;
    }
};

} // namespace aqc
