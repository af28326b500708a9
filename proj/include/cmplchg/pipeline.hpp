#pragma once

#include <optional>
#include <string>

#include "cmplchg/config.hpp"

namespace cmplchg {

enum class Stage { domain, assemble, eig, synth, verify, scan, run };

// Throws Error(config_error) on an unknown stage name.
Stage parse_stage(const std::string& name);

struct StageOptions {
    bool force = false;  // recompute, ignoring cached results
    bool quiet = false;  // suppress progress logging on stderr
    std::optional<std::string> mode_override;  // synth/verify --mode
};

// Exit codes shared by the pipeline and the CLI.
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitCacheMissing = 4;

// Executes one pipeline stage (or the whole pipeline for Stage::run) against
// the config's cache directory, writing cache entries and the JSON report.
// Stages other than `run` read their prerequisites from the cache and fail
// with kExitCacheMissing when a prerequisite stage has not been run.
// CMPLCHG_CACHE_DIR in the environment overrides output.cache_dir.
int run_stage(RunConfig config, Stage stage, const StageOptions& opt);

}  // namespace cmplchg
