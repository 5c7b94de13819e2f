// Copyright Contributors to the Glint Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glint {

/// Malformed or inconsistent input data (files, dimensions, missing assets).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DataError {
    ParseError(const std::string& msg, std::size_t byte_offset)
        : DataError(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    std::size_t offset;
};

struct VersionMismatch : DataError {
    using DataError::DataError;
};

struct MissingImage : DataError {
    using DataError::DataError;
};

struct DimensionMismatch : DataError {
    using DataError::DataError;
};

/// Geometry or optimization failure.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BehindCamera : NumericError {
    using NumericError::NumericError;
};

struct DegenerateDirection : NumericError {
    using NumericError::NumericError;
};

struct DegenerateInput : NumericError {
    using NumericError::NumericError;
};

struct EmptyFootprint : NumericError {
    using NumericError::NumericError;
};

struct ClusteringFailed : NumericError {
    using NumericError::NumericError;
};

}  // namespace glint
