#pragma once

#include <stdexcept>
#include <string>

namespace lievc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation's contract (wrong sizes, bad arguments).
struct ContractError : Error {
    using Error::Error;
};

/// Vector/matrix dimensions do not conform to the owning algebra.
struct DimensionError : ContractError {
    using ContractError::ContractError;
};

/// A basis matrix is rank-deficient or otherwise not a valid subspace.
struct SubspaceError : Error {
    using Error::Error;
};

/// Constraint and input subspaces fail to span the algebra.
struct TransversalityError : Error {
    TransversalityError(const std::string& what, int rank_found, int rank_expected)
        : Error(what), rank_found(rank_found), rank_expected(rank_expected) {}

    int rank_found;
    int rank_expected;
};

/// A catalog builder received parameters outside its admissible range.
struct ParameterError : Error {
    using Error::Error;
};

/// A numerical integration step produced non-finite values.
struct IntegrationError : Error {
    IntegrationError(const std::string& what, double time) : Error(what), time(time) {}

    double time;
};

/// A configuration document could not be parsed or is inconsistent.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace lievc
