#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semcf {

enum class Errc {
  parse,
  validation,
  kind_mismatch,
  unknown_exemplar,
  infeasible,
  budget_exceeded,
  inconsistent_path,
  stale_cache,
  unsupported_version,
  empty_selector,
  io,
};

/// Single exception type for the whole engine; the code tells callers
/// which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// No finite-cost full matching exists. Carries the row indices that could
/// not be assigned to any column at finite cost.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string message, std::vector<int> blocking_rows)
      : Error(Errc::infeasible, std::move(message)),
        blocking_rows_(std::move(blocking_rows)) {}

  const std::vector<int>& blocking_rows() const noexcept {
    return blocking_rows_;
  }

 private:
  std::vector<int> blocking_rows_;
};

}  // namespace semcf
