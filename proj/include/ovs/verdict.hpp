#pragma once

#include <string>

#include "ovs/errors.hpp"

namespace ovs {

enum class Status { Holds, CertifiedHolds, HoldsUpTo, Violated };

inline std::string to_string(Status s) {
  switch (s) {
  case Status::Holds: return "Holds";
  case Status::CertifiedHolds: return "CertifiedHolds";
  case Status::HoldsUpTo: return "HoldsUpTo";
  case Status::Violated: return "Violated";
  }
  return "?";
}

inline Status parse_status(const std::string &s) {
  if (s == "Holds") return Status::Holds;
  if (s == "CertifiedHolds") return Status::CertifiedHolds;
  if (s == "HoldsUpTo") return Status::HoldsUpTo;
  if (s == "Violated") return Status::Violated;
  throw SchemaError("unknown status '" + s + "'");
}

/// Shell exit code for a verdict status.
inline int exit_code(Status s) {
  switch (s) {
  case Status::Holds:
  case Status::CertifiedHolds: return 0;
  case Status::Violated: return 1;
  case Status::HoldsUpTo: return 2;
  }
  return 2;
}

}  // namespace ovs
