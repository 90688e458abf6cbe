#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gvn {

// Error hierarchy. Every failure the library reports goes through one of
// these so callers (CLI, tests) can map them to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {      // malformed input files
    using Error::Error;
};
struct ArgumentError : Error {   // bad call arguments / out-of-range values
    using Error::Error;
};
struct ConfigError : Error {     // invalid run configuration
    using Error::Error;
};
struct CapacityError : Error {   // infeasible sampling requests
    using Error::Error;
};
struct IoError : Error {         // filesystem / serialization failures
    using Error::Error;
};
struct CacheError : Error {      // image cache corruption
    using Error::Error;
};
struct StalenessError : Error {  // repository metadata mismatch
    using Error::Error;
};
struct EncoderLoadError : Error { // missing / corrupt encoder weights
    using Error::Error;
};

using NodeId = int32_t;

// Sentinel for "unreachable" BFS distances. Never rendered or trained on
// directly; callers clamp it where a finite value is needed.
inline constexpr int32_t kInfDist = INT32_MAX;

} // namespace gvn
