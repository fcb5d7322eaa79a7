#pragma once

#include <stdexcept>
#include <string>

namespace qbaf {

/// Categories for everything that can go wrong when building or querying
/// a framework. Exactly one category per failure.
enum class errc {
  duplicate_argument,
  unknown_endpoint,
  overlapping_relations,
  base_score_out_of_range,
  cycle_detected,
  unknown_argument,
  input_out_of_range,
  not_an_edge,
  wrong_connectivity,
  same_argument,
  grid_out_of_range,
  degenerate_stencil,
  tie_avoidance_exhausted,
  topic_mismatch,
  parse_error,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::duplicate_argument: return "DuplicateArgument";
    case errc::unknown_endpoint: return "UnknownEndpoint";
    case errc::overlapping_relations: return "OverlappingRelations";
    case errc::base_score_out_of_range: return "BaseScoreOutOfRange";
    case errc::cycle_detected: return "CycleDetected";
    case errc::unknown_argument: return "UnknownArgument";
    case errc::input_out_of_range: return "InputOutOfRange";
    case errc::not_an_edge: return "NotAnEdge";
    case errc::wrong_connectivity: return "WrongConnectivity";
    case errc::same_argument: return "SameArgument";
    case errc::grid_out_of_range: return "GridOutOfRange";
    case errc::degenerate_stencil: return "DegenerateStencil";
    case errc::tie_avoidance_exhausted: return "TieAvoidanceExhausted";
    case errc::topic_mismatch: return "TopicMismatch";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace qbaf
