#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mmn {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// Input violates a general-position / non-degeneracy precondition.
struct DegenerateInput : Error {
  explicit DegenerateInput(const std::string& what) : Error(what) {}
};

// The exact solver hit its node budget. It never returns a suboptimal
// network silently; callers decide whether to retry or fall back.
struct OracleInconclusive : Error {
  std::uint64_t nodes_explored;
  explicit OracleInconclusive(std::uint64_t nodes)
      : Error("exact search inconclusive after " + std::to_string(nodes) +
              " nodes"),
        nodes_explored(nodes) {}
};

// A self-check failed (e.g. the piercing min-max certificate). Indicates a
// solver bug, not bad input.
struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace mmn
