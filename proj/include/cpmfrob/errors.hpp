#pragma once

#include <stdexcept>
#include <string>

namespace cpmfrob {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct SizeLimit : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotCP : Error {
    using Error::Error;
};

struct NotPure : Error {
    using Error::Error;
};

struct NotFactorizable : Error {
    using Error::Error;
};

// A law failed even after removing the optimal global phase.
struct NotProjectiveAlgebra : Error {
    explicit NotProjectiveAlgebra(const std::string& law, double residual)
        : Error("law '" + law + "' fails even up to phase (residual " + std::to_string(residual) + ")"),
          law(law),
          residual(residual) {}
    std::string law;
    double residual;
};

struct NotFrobenius : Error {
    using Error::Error;
};

struct NotIsometry : Error {
    explicit NotIsometry(double choi_distance)
        : Error("map is not a CP isometry (residual " + std::to_string(choi_distance) + ")"),
          choi_distance(choi_distance) {}
    double choi_distance;
};

struct NumericalDegeneracy : Error {
    using Error::Error;
};

struct CounitNotPure : Error {
    using Error::Error;
};

struct TheoremViolationDiagnostic : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace cpmfrob
