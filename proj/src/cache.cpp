#include "hmf/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "hmf/errors.hpp"

namespace hmf {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

Cache::Cache(fs::path dir, int schema) : dir_(std::move(dir)), schema_(schema) { fs::create_directories(dir_); }

fs::path Cache::path_for(const std::string& key) const {
    return dir_ / (hex(fnv1a("schema=" + std::to_string(schema_) + ";" + key)) + ".entry");
}

// file layout: "schema=<n>\n" "key=<key>\n" "checksum=<hex>\n" payload
std::optional<std::string> Cache::get(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string schema_line, key_line, sum_line;
    if (!std::getline(in, schema_line) || !std::getline(in, key_line) || !std::getline(in, sum_line))
        throw Error(Errc::CacheCorrupt, "truncated header for " + key);
    if (schema_line != "schema=" + std::to_string(schema_)) return std::nullopt;
    if (key_line != "key=" + key) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    std::string payload = body.str();
    if (sum_line != "checksum=" + hex(fnv1a(payload))) throw Error(Errc::CacheCorrupt, "checksum mismatch for " + key);
    return payload;
}

void Cache::put(const std::string& key, const std::string& payload) const {
    fs::path target = path_for(key);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::ConfigError, "cache directory not writable: " + dir_.string());
        out << "schema=" << schema_ << "\nkey=" << key << "\nchecksum=" << hex(fnv1a(payload)) << "\n" << payload;
        if (!out) throw Error(Errc::ConfigError, "cache write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string Cache::get_or_compute(const std::string& key, const std::function<std::string()>& compute) const {
    try {
        if (auto hit = get(key)) return *hit;
    } catch (const Error& e) {
        if (e.code() != Errc::CacheCorrupt) throw;
    }
    std::string v = compute();
    put(key, v);
    return v;
}

} // namespace hmf
