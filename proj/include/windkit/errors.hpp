#pragma once

#include <stdexcept>
#include <string>

namespace windkit {

/// Malformed, inconsistent or insufficient input data (parse failures,
/// misaligned files, unknown sites, missing history).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation that is undefined or infeasible on the given numbers
/// (zero variance, rank deficiency, uninterpolatable gaps).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace windkit
