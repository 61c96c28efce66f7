#pragma once

#include <stdexcept>
#include <string>

namespace mob {

// Invalid experiment configuration (bad flag values, unknown method tags).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem-level failures (missing file, unwritable output dir).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or invalid data encountered during ingestion/validation.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mob
