#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3 {

// Every failure the toolkit reports carries one of these codes. The CLI maps
// them onto exit statuses, so keep the list in sync with tools/k3cli.hpp.
enum class ErrorCode {
  NonSymmetric,
  DimensionMismatch,
  ZeroVector,
  NotPrimitive,
  NotIsotropic,
  NoSolution,
  BadSection,
  NotARoot,
  NotIsometry,
  NotMinusTwo,
  NotOrthogonal,
  DegenerateFrame,
  DoesNotFixE,
  NotSameCoset,
  NotRoots,
  WrongSign,
  Degenerate,
  NotPositivePlane,
  NotPositive,
  EOrthogonalToP,
  KappaNotInP,
  NonTransverse,
  IdenticallyZero,
  ZeroPolynomial,
  NonMinimal,
  InconsistentOrders,
  SmoothFiber,
  CuspAtZero,
  StepTooCoarse,
  Parse,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::BadSection: return "BadSection";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::NotMinusTwo: return "NotMinusTwo";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DoesNotFixE: return "DoesNotFixE";
    case ErrorCode::NotSameCoset: return "NotSameCoset";
    case ErrorCode::NotRoots: return "NotRoots";
    case ErrorCode::WrongSign: return "WrongSign";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotPositivePlane: return "NotPositivePlane";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::EOrthogonalToP: return "EOrthogonalToP";
    case ErrorCode::KappaNotInP: return "KappaNotInP";
    case ErrorCode::NonTransverse: return "NonTransverse";
    case ErrorCode::IdenticallyZero: return "IdenticallyZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonMinimal: return "NonMinimal";
    case ErrorCode::InconsistentOrders: return "InconsistentOrders";
    case ErrorCode::SmoothFiber: return "SmoothFiber";
    case ErrorCode::CuspAtZero: return "CuspAtZero";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace k3
