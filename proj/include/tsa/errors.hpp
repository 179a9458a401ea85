#pragma once

#include <stdexcept>
#include <string>

namespace tsa {

enum class errc {
  not_prime,
  delta_is_square,
  division_by_zero,
  no_such_root,
  field_mismatch,
  shape_mismatch,
  bad_index,
  bad_vertex,
  too_small,
  invalid_topology,
  construction_failed,
  kernel_too_small,
  rank_condition_failed,
  budget_exceeded,
  non_uniform_support,
  parse_error,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::delta_is_square: return "DeltaIsSquare";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::no_such_root: return "NoSuchRoot";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::bad_index: return "BadIndex";
    case errc::bad_vertex: return "BadVertex";
    case errc::too_small: return "TooSmall";
    case errc::invalid_topology: return "InvalidTopology";
    case errc::construction_failed: return "ConstructionFailed";
    case errc::kernel_too_small: return "KernelTooSmall";
    case errc::rank_condition_failed: return "RankConditionFailed";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::non_uniform_support: return "NonUniformSupport";
    case errc::parse_error: return "ParseError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tsa
