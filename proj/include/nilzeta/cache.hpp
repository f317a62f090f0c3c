#pragma once

// Content-addressed on-disk store for oracle results: one JSON document per
// key, written atomically.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace nilzeta {

// Bumped whenever an oracle's output could change.
inline constexpr const char *kOracleCodeVersion = "oracle-1";

// Overrides the default cache directory.
inline constexpr const char *kCacheDirEnv = "NILZETA_CACHE_DIR";

std::uint64_t fnv1a64(const std::string &s);

class ResultCache {
public:
    // An empty path disables the cache.
    explicit ResultCache(std::filesystem::path dir = {});

    // $NILZETA_CACHE_DIR, else $XDG_CACHE_HOME/nilzeta, else ~/.cache/nilzeta.
    static std::filesystem::path default_dir();

    bool enabled() const { return !dir_.empty(); }
    const std::filesystem::path &dir() const { return dir_; }

    // Canonical key document: {"op", "params", "version"}.
    static nlohmann::json key(const std::string &op, const nlohmann::json &params);
    std::filesystem::path path_for(const nlohmann::json &key) const;

    std::optional<nlohmann::json> get(const nlohmann::json &key) const;
    // Best effort: an unwritable directory leaves the cache a no-op.
    void put(const nlohmann::json &key, const nlohmann::json &value) const;

private:
    std::filesystem::path dir_;
};

} // namespace nilzeta
