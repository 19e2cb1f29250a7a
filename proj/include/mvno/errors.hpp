#pragma once

#include <stdexcept>
#include <string>

namespace mvno {

enum class Errc {
  NonPositiveFee,
  FeeBelowCost,
  NegativeCost,
  InsufficientValuation,
  ZeroLeaderInvestment,
  InvestmentOrderViolated,
  SingularDenominator,
  NonPositiveTransport,
  BadGrid,
  NoConvergence,
  CoverageViolated,
  EmptyRows,
  IoFailure,
};

const char* errc_name(Errc code) noexcept;

/// Domain error carrying a machine-checkable code alongside the message.
class ModelError : public std::runtime_error {
 public:
  ModelError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace mvno
