#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cmplchg {

// Binary cache layout: 8-byte magic, little-endian uint64 header length, a
// JSON header {fingerprint, kind, n, layout, ...extras}, then the payload as
// little-endian 64-bit floats. No timestamps, so identical inputs produce
// byte-identical files.
inline constexpr std::string_view kCacheMagic = "CMPLCHG1";

struct CacheHeader {
    std::string fingerprint;  // hash of the generating config subsection
    std::string kind;         // "cubature" | "operator" | "eigensystem" | "quadruple"
    std::uint64_t n = 0;      // node count
    std::string layout;
    nlohmann::json extra;     // kind-specific scalar metadata
};

std::uint64_t fnv1a64(std::string_view bytes);

// Fingerprint = FNV-1a 64 over the canonical (sorted-key) dump of a config
// subsection, rendered as 16 hex digits.
std::string fingerprint_of(const nlohmann::json& canonical);

void write_cache_file(const std::string& path, const CacheHeader& header,
                      const std::vector<double>& payload);

struct CacheData {
    CacheHeader header;
    std::vector<double> payload;
};

// Returns the cached data when the file exists and its fingerprint and kind
// match; a mismatch returns nullopt (forcing recompute), a missing file
// returns nullopt, and a structurally corrupt file throws Error(io_error).
std::optional<CacheData> read_cache_file(const std::string& path,
                                         const std::string& expected_fingerprint,
                                         const std::string& expected_kind);

// Advisory lock file guarding a cache directory against concurrent writers.
// Creates <dir>/.lock exclusively; throws Error(io_error) if it already
// exists. Removed on destruction.
class CacheLock {
public:
    explicit CacheLock(const std::string& cache_dir);
    ~CacheLock();
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;

private:
    std::string lock_path_;
};

}  // namespace cmplchg
