#pragma once

#include <stdexcept>
#include <string>

namespace stab {

enum class Errc {
  epsilon_invalid,
  orientation_violation,
  side_too_long,
  record_mismatch,
  segment_out_of_bounds,
  budget_exceeded,
  infeasible,
  cap_exceeded,
  memo_overflow,
  guess_space_exceeded,
  vertical_leak,
  zero_length,
  parse_error,
  unknown_solver,
  bad_params,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace stab
