#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cayjoin {

enum class Errc {
  TableNotGroup,
  OrderCapExceeded,
  InvalidReps,
  NotAHomomorphism,
  GeneratorsInsufficient,
  ClosureCapExceeded,
  AsymmetricConnectionSet,
  IdentityInConnectionSet,
  SizeCapExceeded,
  LambdaNotEpimorphism,
  SigmaNotPartition,
  ThetaNotEpimorphism,
  TheoremChoicesUnavailable,
  NotClosed,
  NotRegular,
  SynthesisFailed,
  VerificationFailed,
  InvalidInput,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  bool is_cap() const noexcept {
    return code_ == Errc::OrderCapExceeded || code_ == Errc::ClosureCapExceeded ||
           code_ == Errc::SizeCapExceeded;
  }

 private:
  Errc code_;
};

}  // namespace cayjoin
