#pragma once

#include <stdexcept>
#include <string>

namespace eraserlab {

// Invalid input or configuration. The CLI maps these to exit code 2.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that started but failed to converge or exceeded a resource
// budget. The CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct non_hermitian_input : validation_error { using validation_error::validation_error; };
struct dimension_mismatch : validation_error { using validation_error::validation_error; };
struct infeasible_targets : validation_error { using validation_error::validation_error; };
struct noncommuting_observables : validation_error { using validation_error::validation_error; };
struct empty_path : validation_error { using validation_error::validation_error; };
struct length_mismatch : validation_error { using validation_error::validation_error; };
struct non_positive_beta : validation_error { using validation_error::validation_error; };
struct invalid_schedule : validation_error { using validation_error::validation_error; };
struct too_many_steps : validation_error { using validation_error::validation_error; };
struct unnormalized_distribution : validation_error { using validation_error::validation_error; };
struct invalid_n : validation_error { using validation_error::validation_error; };
struct mismatched_gamma : validation_error { using validation_error::validation_error; };
struct invalid_reservoir : validation_error { using validation_error::validation_error; };
struct invalid_protocol_config : validation_error { using validation_error::validation_error; };
struct invalid_bath : validation_error { using validation_error::validation_error; };
struct no_up_sector_support : validation_error { using validation_error::validation_error; };
struct config_invalid : validation_error { using validation_error::validation_error; };
struct zero_heat : validation_error { using validation_error::validation_error; };
struct incomplete_cycle : validation_error { using validation_error::validation_error; };
struct unknown_parameter : validation_error { using validation_error::validation_error; };

struct no_convergence : numerical_error { using numerical_error::numerical_error; };
struct dimension_overflow : numerical_error { using numerical_error::numerical_error; };

} // namespace eraserlab
