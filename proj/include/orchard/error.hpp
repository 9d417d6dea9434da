#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orchard {

/// Every failure mode raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  ZeroInverse,
  NonResidue,
  CompositeModulus,
  ZeroVector,
  EqualPoints,
  MixedContexts,
  LineInPlane,
  TooLarge,
  BadCenter,
  PointOffPlane,
  OnExcludedPlane,
  NotApplicable,
  PointOnQuadric,
  PointOffQuadric,
  CharTwo,
  NotOnSegreQuadric,
  Singular,
  EqualPlanes,
  ClosureCapExceeded,
  EmptySupport,
  DuplicateElements,
  MixedGroups,
  SupportBlowup,
  NotASubgroup,
  DegenerateParameters,
  VerificationFailure,
  SingularForm,
  NoSqrtMinusOne,
  IdentityElement,
  NotOnQuadricGroup,
  Parse,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orchard
