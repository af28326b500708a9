#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmplchg/cubature.hpp"
#include "cmplchg/kernel.hpp"

namespace cmplchg {

struct DomainConfig {
    std::string shape;  // "cylinder" or "box"
    double radius = 1.0, height = 1.0;    // cylinder dimensions
    double lx = 1.0, ly = 1.0, lz = 1.0;  // box dimensions
    int nr = 1, ntheta = 1;               // cylinder resolutions
    int nx = 1, ny = 1;                   // box resolutions
    int nz = 1;                           // axial resolution (both shapes)
};

struct SynthesisConfig {
    std::string mode = "strong";  // "weak" or "strong"
    int i = 0, j = 1, k = 2;
    std::optional<double> alpha;
};

struct PoseScanConfig {
    std::vector<double> r1{0.0}, r2{0.0}, r3;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    int angle_count = 1;
    double contact_r3 = 0.0;
};

struct VerifyConfig {
    std::optional<double> tol;
    std::optional<PoseScanConfig> pose_scan;
};

struct OutputConfig {
    std::string report_path = "report.json";
    std::optional<std::string> export_path;
    std::string cache_dir = "cache";
};

struct RunConfig {
    DomainConfig domain;
    KernelSpec kernel;
    SynthesisConfig synthesis;
    VerifyConfig verify;
    OutputConfig output;
};

// Parses and validates a run configuration. Both throw Error(config_error)
// (or a more specific kind, e.g. invalid_pair for i == j) with a diagnostic
// naming the offending key.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& j);

// Builds the configured cubature; enforces the 4096-node cap.
Cubature build_domain(const DomainConfig& d);

// Canonical JSON re-serializations of config subsections; these feed cache
// fingerprints, so key order and value formatting must stay stable.
nlohmann::json domain_json(const DomainConfig& d);
nlohmann::json kernel_json(const KernelSpec& spec);
nlohmann::json synthesis_json(const SynthesisConfig& s);

}  // namespace cmplchg
