#include "nilzeta/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace nilzeta {

std::uint64_t fnv1a64(const std::string &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::default_dir() {
    if (const char *e = std::getenv(kCacheDirEnv); e && *e) return e;
    if (const char *x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "nilzeta";
    if (const char *h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "nilzeta";
    return ".nilzeta-cache";
}

nlohmann::json ResultCache::key(const std::string &op, const nlohmann::json &params) {
    return {{"op", op}, {"params", params}, {"version", kOracleCodeVersion}};
}

std::filesystem::path ResultCache::path_for(const nlohmann::json &key) const {
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a64(key.dump())));
    return dir_ / name;
}

std::optional<nlohmann::json> ResultCache::get(const nlohmann::json &key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    // A hash collision or a truncated file reads as a miss.
    if (doc.is_discarded() || !doc.contains("key") || doc["key"] != key || !doc.contains("value")) return std::nullopt;
    return doc["value"];
}

void ResultCache::put(const nlohmann::json &key, const nlohmann::json &value) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    const auto target = path_for(key);
    std::ostringstream suffix;
    suffix << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    auto tmp = target;
    tmp += suffix.str();
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << nlohmann::json{{"key", key}, {"value", value}}.dump(1) << "\n";
        if (!out) {
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

} // namespace nilzeta
