#include "cmplchg/cache.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "cmplchg/errors.hpp"

// The payload format is little-endian; on a little-endian host the doubles
// can be written and read without byte swaps.
static_assert(std::endian::native == std::endian::little,
              "cache serialization assumes a little-endian host");

namespace cmplchg {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fingerprint_of(const nlohmann::json& canonical) {
    // nlohmann::json stores objects sorted by key, so dump() is canonical.
    const std::string dumped = canonical.dump();
    const std::uint64_t h = fnv1a64(dumped);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

namespace {

void put_u64_le(std::ofstream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

void write_cache_file(const std::string& path, const CacheHeader& header,
                      const std::vector<double>& payload) {
    nlohmann::json h = header.extra.is_object() ? header.extra : nlohmann::json::object();
    h["fingerprint"] = header.fingerprint;
    h["kind"] = header.kind;
    h["n"] = header.n;
    h["layout"] = header.layout;
    const std::string header_bytes = h.dump();

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::io_error, "cannot open \"" + tmp + "\" for writing");
        out.write(kCacheMagic.data(), static_cast<std::streamsize>(kCacheMagic.size()));
        put_u64_le(out, header_bytes.size());
        out.write(header_bytes.data(), static_cast<std::streamsize>(header_bytes.size()));
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size() * sizeof(double)));
        if (!out) throw Error(ErrorKind::io_error, "short write to \"" + tmp + "\"");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::io_error, "cannot move cache file into place at \"" + path + "\"");
}

std::optional<CacheData> read_cache_file(const std::string& path,
                                         const std::string& expected_fingerprint,
                                         const std::string& expected_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;  // missing file: caller recomputes

    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kCacheMagic.data(), 8) != 0)
        throw Error(ErrorKind::io_error, "\"" + path + "\" is not a cache file (bad magic)");

    const std::uint64_t header_len = get_u64_le(in);
    if (!in || header_len > (1ull << 20))
        throw Error(ErrorKind::io_error, "\"" + path + "\" has a corrupt header length");
    std::string header_bytes(header_len, '\0');
    in.read(header_bytes.data(), static_cast<std::streamsize>(header_len));
    if (!in) throw Error(ErrorKind::io_error, "\"" + path + "\" is truncated inside the header");

    nlohmann::json h;
    try {
        h = nlohmann::json::parse(header_bytes);
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::io_error, "\"" + path + "\" has a corrupt JSON header");
    }
    if (!h.is_object() || !h.contains("fingerprint") || !h.contains("kind") ||
        !h.contains("n") || !h.contains("layout"))
        throw Error(ErrorKind::io_error, "\"" + path + "\" header is missing required fields");

    CacheData data;
    data.header.fingerprint = h.at("fingerprint").get<std::string>();
    data.header.kind = h.at("kind").get<std::string>();
    data.header.n = h.at("n").get<std::uint64_t>();
    data.header.layout = h.at("layout").get<std::string>();
    data.header.extra = h;
    data.header.extra.erase("fingerprint");
    data.header.extra.erase("kind");
    data.header.extra.erase("n");
    data.header.extra.erase("layout");

    if (data.header.fingerprint != expected_fingerprint || data.header.kind != expected_kind)
        return std::nullopt;  // stale entry: caller recomputes and overwrites

    // Remainder of the file is the float64 payload.
    const auto payload_start = in.tellg();
    in.seekg(0, std::ios::end);
    const auto payload_bytes = in.tellg() - payload_start;
    if (payload_bytes < 0 || payload_bytes % 8 != 0)
        throw Error(ErrorKind::io_error, "\"" + path + "\" payload is not a whole number of float64s");
    in.seekg(payload_start);
    data.payload.resize(static_cast<std::size_t>(payload_bytes) / 8);
    in.read(reinterpret_cast<char*>(data.payload.data()), payload_bytes);
    if (!in) throw Error(ErrorKind::io_error, "\"" + path + "\" is truncated inside the payload");
    return data;
}

CacheLock::CacheLock(const std::string& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    lock_path_ = cache_dir + "/.lock";
    std::FILE* f = std::fopen(lock_path_.c_str(), "wx");
    if (!f) {
        lock_path_.clear();
        throw Error(ErrorKind::io_error,
                    "cache directory \"" + cache_dir +
                        "\" is locked by another process (stale? remove .lock)");
    }
    std::fclose(f);
}

CacheLock::~CacheLock() {
    if (!lock_path_.empty()) std::remove(lock_path_.c_str());
}

}  // namespace cmplchg
