#pragma once

#include <stdexcept>
#include <string>

namespace ovs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankError : Error {
  using Error::Error;
};
struct DimError : Error {
  using Error::Error;
};
struct NotALattice : Error {
  using Error::Error;
};
struct NotSublattice : Error {
  using Error::Error;
};
struct RadicandMismatch : Error {
  using Error::Error;
};
struct HypothesisUnverifiable : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};
struct BadDilation : Error {
  using Error::Error;
};
struct BadIndex : Error {
  using Error::Error;
};
/// Malformed external input; `what()` carries a path-qualified message.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace ovs
