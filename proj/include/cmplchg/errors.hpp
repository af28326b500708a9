#pragma once

#include <stdexcept>
#include <string>

namespace cmplchg {

enum class ErrorKind {
    invalid_argument,    // malformed sizes, dimensions, non-unit axes, ...
    singular_kernel,     // unsoftened Coulomb evaluated at zero separation
    unsupported_domain,  // operation needs structure the domain lacks (rings)
    invalid_pair,        // eigenfunction indices not pairwise distinct
    indefinite_mode,     // construction requires a negative eigenvalue
    inadmissible_alpha,  // perturbation size outside (0, alpha_max)
    numerical_failure,   // iteration did not converge
    config_error,        // unreadable / malformed run configuration
    cache_missing,       // stage prerequisite not present in the cache
    io_error,            // file not writable / corrupt cache file
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, double detail = 0.0)
        : std::runtime_error(message), kind_(kind), detail_(detail) {}

    ErrorKind kind() const { return kind_; }

    // Kind-specific scalar payload; for numerical_failure this is the
    // achieved off-diagonal norm when the sweep cap was hit.
    double detail() const { return detail_; }

private:
    ErrorKind kind_;
    double detail_;
};

}  // namespace cmplchg
