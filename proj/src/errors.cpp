#include "symrigid/errors.hpp"

namespace symrigid {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::mixed_groups: return "mixed-groups";
    case ErrorCode::unsupported_enumeration: return "unsupported-enumeration";
    case ErrorCode::size_cap: return "size-cap";
    case ErrorCode::not_tight: return "not-tight";
    case ErrorCode::decomposition_impossible: return "decomposition-impossible";
    case ErrorCode::invalid_step: return "invalid-step";
    case ErrorCode::no_valid_gains: return "no-valid-gains";
    case ErrorCode::rank_deficient: return "rank-deficient";
    case ErrorCode::schema: return "schema";
    case ErrorCode::validation: return "validation";
    case ErrorCode::resource_cap: return "resource-cap";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace symrigid
