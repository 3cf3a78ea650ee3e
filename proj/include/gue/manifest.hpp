#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace gue {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

std::string sha256_file(const std::filesystem::path& path);
std::string iso8601_utc(std::chrono::system_clock::time_point t);

/// Provenance record written as manifest.json next to a command's outputs.
struct RunManifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::string version = kToolVersion;
    std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
    std::chrono::system_clock::time_point finished{};

    struct Output {
        std::string file;
        std::string sha256;
    };
    std::vector<Output> outputs;

    /// Digests a file that has already been written (path relative to the
    /// output directory is recorded).
    void add_output(const std::filesystem::path& dir, const std::string& file);
    nlohmann::json to_json() const;
    void write(const std::filesystem::path& dir);
};

/// Writes text and returns its path; creates the directory if needed.
std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& file, const std::string& text);

/// 17 significant digits.
std::string format_double(double v);

}  // namespace gue
