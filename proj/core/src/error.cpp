#include "eoe/error.hpp"

namespace eoe {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidSize: return "invalid-size";
    case Errc::InvalidPartition: return "invalid-partition";
    case Errc::InvalidGraph: return "invalid-graph";
    case Errc::UnsupportedClosedForm: return "unsupported-closed-form";
    case Errc::NoAbsorption: return "no-absorption";
    case Errc::NumericDegeneracy: return "numeric-degeneracy";
    case Errc::MomentDivergenceSuspected: return "moment-divergence-suspected";
    case Errc::TooLarge: return "too-large";
    case Errc::RunawaySimulation: return "runaway-simulation";
    case Errc::RegimeViolation: return "regime-violation";
    case Errc::UnknownLaw: return "unknown-law";
    case Errc::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace eoe
