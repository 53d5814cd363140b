#pragma once

#include <stdexcept>
#include <string>

namespace chns {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero mode of a Poisson right side exceeds the compatibility tolerance.
struct CompatibilityError : Error {
    using Error::Error;
};

// Solver state became inadmissible (NaN/Inf fields, E + kappa0 <= 0, ...).
struct StateError : Error {
    using Error::Error;
};

// BDF order outside 1..5.
struct OrderError : Error {
    using Error::Error;
};

struct UnknownScenario : Error {
    using Error::Error;
};

// Config text could not be tokenized.
struct ParseError : Error {
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line(line) {}
    int line;
};

// Config tokenized but a value or key is invalid.
struct ValidationError : Error {
    explicit ValidationError(const std::string& key, const std::string& msg = "")
        : Error("invalid config key '" + key + "'" + (msg.empty() ? "" : ": " + msg)),
          key(key) {}
    std::string key;
};

}  // namespace chns
