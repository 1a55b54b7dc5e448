#pragma once

#include <stdexcept>
#include <string>

namespace critwin {

enum class Errc {
  parse,
  invalid_degree_set,
  domain,
  truncation_instability,
  no_critical_point,
  non_convergence,
  singularity,
  out_of_range,
  branch_cut,
  precondition,
  infeasible,
  max_attempts,
  internal,
  size_guard,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace critwin
