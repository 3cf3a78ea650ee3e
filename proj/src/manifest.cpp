#include "gue/manifest.hpp"

#include <array>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace gue {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sha256_file: cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md.data(), &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string iso8601_utc(std::chrono::system_clock::time_point t) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunManifest::add_output(const std::filesystem::path& dir, const std::string& file) {
    outputs.push_back({file, sha256_file(dir / file)});
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["version"] = version;
    j["started"] = iso8601_utc(started);
    j["finished"] = iso8601_utc(finished);
    j["outputs"] = nlohmann::json::array();
    for (const auto& o : outputs) j["outputs"].push_back({{"file", o.file}, {"sha256", o.sha256}});
    return j;
}

void RunManifest::write(const std::filesystem::path& dir) {
    finished = std::chrono::system_clock::now();
    write_text(dir, "manifest.json", to_json().dump(2) + "\n");
}

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& file, const std::string& text) {
    std::filesystem::create_directories(dir);
    const auto path = dir / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    return path;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace gue
