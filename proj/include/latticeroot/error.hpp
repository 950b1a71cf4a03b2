#ifndef LATTICEROOT_ERROR_HPP
#define LATTICEROOT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace latticeroot {

enum class Errc {
  InvalidInput,
  Overflow,
  NotATree,
  DuplicateId,
  UnknownVertex,
  ZeroDenominator,
  NotExpandable,
  NotCoprime,
  NoSolution,
  NotNegativeDefinite,
  IterationCap,
  TruncationNotReached,
  BoxTooSmall,
  NegativeDimension,
  NonIntegralDimension,
  OddGrading,
  NoCube,
  LegsNotIdentical,
  BaseInCube,
  SymmetryBroken,
  IndexOutOfRange,
  NotTwoBridge,
  OddClass,
  HypothesisFailed,
  SignatureNonzero,
  NotEvenTorus,
  EvenInput,
  UnknownFamily,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::Overflow: return "Overflow";
    case Errc::NotATree: return "NotATree";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::NotExpandable: return "NotExpandable";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NotNegativeDefinite: return "NotNegativeDefinite";
    case Errc::IterationCap: return "IterationCap";
    case Errc::TruncationNotReached: return "TruncationNotReached";
    case Errc::BoxTooSmall: return "BoxTooSmall";
    case Errc::NegativeDimension: return "NegativeDimension";
    case Errc::NonIntegralDimension: return "NonIntegralDimension";
    case Errc::OddGrading: return "OddGrading";
    case Errc::NoCube: return "NoCube";
    case Errc::LegsNotIdentical: return "LegsNotIdentical";
    case Errc::BaseInCube: return "BaseInCube";
    case Errc::SymmetryBroken: return "SymmetryBroken";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotTwoBridge: return "NotTwoBridge";
    case Errc::OddClass: return "OddClass";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::SignatureNonzero: return "SignatureNonzero";
    case Errc::NotEvenTorus: return "NotEvenTorus";
    case Errc::EvenInput: return "EvenInput";
    case Errc::UnknownFamily: return "UnknownFamily";
  }
  return "Unknown";
}

// All domain failures carry a code so callers (and the CLI) can branch on them.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace latticeroot

#endif
