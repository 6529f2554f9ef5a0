#pragma once

// On-disk cache of serialized results, keyed by a parameter string.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace hmf {

inline constexpr int kCacheSchema = 2;

class Cache {
public:
    explicit Cache(std::filesystem::path dir, int schema = kCacheSchema);

    const std::filesystem::path& dir() const { return dir_; }
    // miss on absent file, other schema or other key; CacheCorrupt on checksum mismatch
    std::optional<std::string> get(const std::string& key) const;
    // atomic: written to a temporary file and renamed into place
    void put(const std::string& key, const std::string& payload) const;
    // corrupted entries are recomputed and overwritten
    std::string get_or_compute(const std::string& key, const std::function<std::string()>& compute) const;
    std::filesystem::path path_for(const std::string& key) const;

private:
    std::filesystem::path dir_;
    int schema_;
};

std::uint64_t fnv1a(const std::string& s);

} // namespace hmf
