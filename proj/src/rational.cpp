#include "stab/rational.hpp"

namespace stab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::epsilon_invalid: return "EpsilonInvalid";
    case Errc::orientation_violation: return "OrientationViolation";
    case Errc::side_too_long: return "SideTooLong";
    case Errc::record_mismatch: return "RecordMismatch";
    case Errc::segment_out_of_bounds: return "SegmentOutOfBounds";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::infeasible: return "Infeasible";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::memo_overflow: return "MemoOverflow";
    case Errc::guess_space_exceeded: return "GuessSpaceExceeded";
    case Errc::vertical_leak: return "VerticalLeak";
    case Errc::zero_length: return "ZeroLength";
    case Errc::parse_error: return "ParseError";
    case Errc::unknown_solver: return "UnknownSolver";
    case Errc::bad_params: return "BadParams";
  }
  return "Error";
}

Rat Rat::parse(const std::string& s) {
  auto bad = [&]() -> Rat {
    fail(Errc::parse_error, "not a rational: '" + s + "'");
  };
  if (s.empty()) return bad();
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    std::int64_t n = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) return bad();
    if (slash == std::string::npos) return Rat(n);
    std::int64_t d = std::stoll(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1) return bad();
    if (d == 0) return bad();
    return Rat(n, d);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    return bad();
  }
}

std::int64_t floor_steps(const Rat& x, const Rat& base, const Rat& step) {
  return ((x - base) / step).floor();
}
std::int64_t ceil_steps(const Rat& x, const Rat& base, const Rat& step) {
  return ((x - base) / step).ceil();
}

}  // namespace stab
