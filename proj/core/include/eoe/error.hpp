#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eoe {

enum class Errc {
  InvalidSize,
  InvalidPartition,
  InvalidGraph,
  UnsupportedClosedForm,
  NoAbsorption,
  NumericDegeneracy,
  MomentDivergenceSuspected,
  TooLarge,
  RunawaySimulation,
  RegimeViolation,
  UnknownLaw,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace eoe
