#pragma once

#include <string>

#include <json.hpp>

#include "cmplchg/spectral.hpp"
#include "cmplchg/synthesis.hpp"
#include "cmplchg/verify.hpp"

namespace cmplchg {

nlohmann::json pose_json(const Pose& p);
nlohmann::json definiteness_json(const DefinitenessReport& r, double tol);
nlohmann::json quadruple_meta_json(const QuadrupleMeta& m);
nlohmann::json verification_json(const VerificationReport& r);
nlohmann::json pose_scan_json(const PoseScanResult& r);

// First `count` eigenvalues (or all, if fewer).
nlohmann::json eigenvalue_summary_json(const EigenSystem& es, int count = 10);

std::string timestamp_utc_now();

// Writes pretty-printed JSON with a trailing newline. Throws Error(io_error)
// when the path is not writable.
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace cmplchg
