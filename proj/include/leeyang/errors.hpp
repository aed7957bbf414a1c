#ifndef LEEYANG_ERRORS_HPP
#define LEEYANG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace leeyang {

// Invalid user input: malformed graph, bad CLI flags, unreadable files.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The computation itself could not be completed to the requested certainty:
// zero-count certification failure, ODE step underflow, ordering violation.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace leeyang

#endif
