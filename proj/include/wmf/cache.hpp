#ifndef WMF_CACHE_HPP
#define WMF_CACHE_HPP

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <openssl/evp.h>
#include <unistd.h>

#include "basis.hpp"
#include "series.hpp"

namespace wmf::cache {

namespace fs = std::filesystem;

inline constexpr const char* kEnvVar = "WMF_CACHE_DIR";

/// Stored coefficients of one basis element. Rows hold the nonzero
/// coefficients on [-m, precision], sorted by n.
struct CacheEntry {
    TowerKey key;
    Exponent m = 0;
    Exponent precision = 0;
    std::vector<std::pair<Exponent, Integer>> rows;
    std::string digest;

    QSeries series() const {
        SeriesBuilder b(-m, precision);
        for (const auto& [n, c] : rows) b.at(n) = Rational(c);
        return std::move(b).finish();
    }
};

inline std::string canonical_rows(const std::vector<std::pair<Exponent, Integer>>& rows) {
    std::string out;
    for (const auto& [n, c] : rows) {
        out += std::to_string(n);
        out += ' ';
        out += c.get_str();
        out += '\n';
    }
    return out;
}

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

inline CacheEntry make_entry(const TowerKey& key, Exponent m, const QSeries& s) {
    if (!s.is_integral()) throw SeriesError("cache entries hold integral series only");
    CacheEntry e{key, m, s.precision(), {}, {}};
    if (!s.is_zero()) {
        const auto coeffs = s.coefficients();
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (sgn(coeffs[i]) != 0)
                e.rows.emplace_back(s.valuation() + static_cast<Exponent>(i), coeffs[i].get_num());
    }
    e.digest = sha256_hex(canonical_rows(e.rows));
    return e;
}

inline std::string header_line(const CacheEntry& e) {
    return "# wmf-cache v1 level=" + std::to_string(e.key.level) + " weight=" + std::to_string(e.key.weight) +
           " family=" + std::string(family_tag(e.key.family)) + " m=" + std::to_string(e.m) +
           " precision=" + std::to_string(e.precision) + " digest=" + e.digest;
}

inline fs::path entry_path(const fs::path& dir, const TowerKey& key, Exponent m) {
    return dir / ("N" + std::to_string(key.level) + "_k" + std::to_string(key.weight) + "_" +
                  std::string(family_tag(key.family)) + "_m" + std::to_string(m) + ".wmfc");
}

/// Parses a cache file. Returns nullopt when the file is missing, malformed,
/// keyed differently, or its digest does not match the rows.
inline std::optional<CacheEntry> parse_entry(const fs::path& path, const TowerKey& key, Exponent m) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header)) return std::nullopt;

    CacheEntry e;
    e.key = key;
    e.m = m;
    std::istringstream hs(header);
    std::string hash, magic, version;
    hs >> hash >> magic >> version;
    if (hash != "#" || magic != "wmf-cache" || version != "v1") return std::nullopt;
    std::string field;
    bool level_ok = false, weight_ok = false, family_ok = false, m_ok = false, prec_ok = false;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) return std::nullopt;
        const std::string name = field.substr(0, eq), value = field.substr(eq + 1);
        try {
            if (name == "level") level_ok = std::stoi(value) == key.level;
            else if (name == "weight") weight_ok = std::stoi(value) == key.weight;
            else if (name == "family") family_ok = value == family_tag(key.family);
            else if (name == "m") m_ok = std::stol(value) == m;
            else if (name == "precision") e.precision = std::stol(value), prec_ok = true;
            else if (name == "digest") e.digest = value;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (!(level_ok && weight_ok && family_ok && m_ok && prec_ok) || e.digest.empty()) return std::nullopt;

    std::string line;
    Exponent last = -m - 1;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        Exponent n;
        std::string c;
        if (!(ls >> n >> c) || n <= last || n > e.precision) return std::nullopt;
        Integer value;
        if (value.set_str(c, 10) != 0) return std::nullopt;
        e.rows.emplace_back(n, std::move(value));
        last = n;
    }
    if (sha256_hex(canonical_rows(e.rows)) != e.digest) return std::nullopt;
    return e;
}

/// Entry for (key, m) valid at least to `precision`, if one is stored intact.
inline std::optional<CacheEntry> cache_read(const fs::path& dir, const TowerKey& key, Exponent m, Exponent precision) {
    auto e = parse_entry(entry_path(dir, key, m), key, m);
    if (!e || e->precision < precision) return std::nullopt;
    return e;
}

/// Writes via a temporary file in the same directory and renames it into place.
inline void cache_write(const fs::path& dir, const CacheEntry& e) {
    static std::atomic<unsigned long> counter{0};
    fs::create_directories(dir);
    const fs::path target = entry_path(dir, e.key, e.m);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << header_line(e) << '\n' << canonical_rows(e.rows);
        if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    fs::rename(tmp, target);
}

inline std::optional<fs::path> default_dir() {
    const char* v = std::getenv(kEnvVar);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return fs::path(v);
}

/// Basis element series through the cache: a stored entry that reaches the
/// requested precision is used as is, anything else is rebuilt and rewritten.
inline QSeries cached_series(const std::optional<fs::path>& dir, const TowerKey& key, Exponent m, Exponent precision,
                             BasisCache& basis = default_cache()) {
    if (dir) {
        if (auto hit = cache_read(*dir, key, m, precision)) return truncate(hit->series(), precision);
    }
    QSeries s = basis.tower(key, m, precision)->element(m).series;
    if (dir) cache_write(*dir, make_entry(key, m, s));
    return truncate(s, precision);
}

}  // namespace wmf::cache

#endif
