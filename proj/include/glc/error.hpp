#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glc {

enum class errc {
  not_found,
  invalid_separation,
  invalid_partition,
  odd_cut_present,
  invalid_spec,
  would_create_loop,
  invalid_system,
  invalid_input,
  invalid_thread,
  too_large,
  no_odd_cut,
  precondition_violated,
  subdivide_first,
  construction_invariant_violated,
  refused,
  parse_error,
};

inline std::string_view to_string(errc c) {
  switch (c) {
    case errc::not_found: return "NotFound";
    case errc::invalid_separation: return "InvalidSeparation";
    case errc::invalid_partition: return "InvalidPartition";
    case errc::odd_cut_present: return "OddCutPresent";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::would_create_loop: return "WouldCreateLoop";
    case errc::invalid_system: return "InvalidSystem";
    case errc::invalid_input: return "InvalidInput";
    case errc::invalid_thread: return "InvalidThread";
    case errc::too_large: return "TooLarge";
    case errc::no_odd_cut: return "NoOddCut";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::subdivide_first: return "SubdivideFirst";
    case errc::construction_invariant_violated: return "ConstructionInvariantViolated";
    case errc::refused: return "Refused";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace glc
