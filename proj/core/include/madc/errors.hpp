#pragma once

#include <stdexcept>
#include <string>

namespace madc {

// A call violated a documented precondition (out-of-range parameter,
// divisibility failure, malformed subset, ...).
struct InvalidParameters : std::invalid_argument {
  explicit InvalidParameters(const std::string& msg) : std::invalid_argument(msg) {}
};

// Parameters are well formed but the requested optimisation or construction
// has no feasible solution.
struct InfeasibleParameters : std::runtime_error {
  explicit InfeasibleParameters(const std::string& msg) : std::runtime_error(msg) {}
};

// A phase asked for an intermediate value that the node's view of the file
// system does not contain.
struct MissingIV : std::runtime_error {
  explicit MissingIV(const std::string& msg) : std::runtime_error(msg) {}
};

// Transcript contents are inconsistent with what the decoding reducer
// expects (wrong structure, wrong sizes, failed redundancy check).
struct DecodeFailure : std::runtime_error {
  explicit DecodeFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace madc
