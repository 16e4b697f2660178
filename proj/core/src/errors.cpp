#include "relayrate/errors.hpp"

namespace relayrate {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::MassNotOne: return "MassNotOne";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::DuplicateEntry: return "DuplicateEntry";
    case Errc::BitOutOfRange: return "BitOutOfRange";
    case Errc::OverlappingSets: return "OverlappingSets";
    case Errc::EmptyComponentSubset: return "EmptyComponentSubset";
    case Errc::NegativeRate: return "NegativeRate";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::MissingSubset: return "MissingSubset";
    case Errc::EmptySubset: return "EmptySubset";
    case Errc::KOutOfRange: return "KOutOfRange";
    case Errc::JNotInComplement: return "JNotInComplement";
    case Errc::InvalidPair: return "InvalidPair";
    case Errc::NumericalBreakdown: return "NumericalBreakdown";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::EntropyOutOfRange: return "EntropyOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonpositiveCapacity: return "NonpositiveCapacity";
    case Errc::WrongUserCount: return "WrongUserCount";
    case Errc::UserCountOutOfRange: return "UserCountOutOfRange";
    case Errc::NonEntropicProfile: return "NonEntropicProfile";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace relayrate
