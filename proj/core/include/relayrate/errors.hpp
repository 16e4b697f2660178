#pragma once

#include <stdexcept>
#include <string>

namespace relayrate {

enum class Errc {
  NegativeProbability,
  MassNotOne,
  SymbolOutOfRange,
  DuplicateEntry,
  BitOutOfRange,
  OverlappingSets,
  EmptyComponentSubset,
  NegativeRate,
  ProbabilityOutOfRange,
  MissingSubset,
  EmptySubset,
  KOutOfRange,
  JNotInComplement,
  InvalidPair,
  NumericalBreakdown,
  DimensionTooLarge,
  EntropyOutOfRange,
  LengthMismatch,
  NonpositiveCapacity,
  WrongUserCount,
  UserCountOutOfRange,
  NonEntropicProfile,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace relayrate
