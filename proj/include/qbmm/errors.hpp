#pragma once

#include <stdexcept>
#include <string>

namespace qbmm {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State outside the admissible domain: nonpositive density, unrealizable
// moments (e < -tolerance), frontier access where the interior is required,
// realizability loss during a run.
struct DomainError : Error {
    using Error::Error;
};

// Iterative solve failed (carries the final residual in the message), or the
// root found violates the entropy conditions.
struct ConvergenceError : Error {
    using Error::Error;
};

// Bad case identifier, oracle queried outside its validity window, or a
// malformed study setup (e.g. a convergence fit with a single grid).
struct CaseError : Error {
    using Error::Error;
};

// Command-line misuse.
struct UsageError : Error {
    using Error::Error;
};

// Filesystem failure; the message includes the offending path.
struct IoError : Error {
    using Error::Error;
};

}  // namespace qbmm
