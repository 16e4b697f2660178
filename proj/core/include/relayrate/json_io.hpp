#pragma once

#include <string>
#include <vector>

#include "relayrate/rate_region.hpp"
#include "relayrate/relay.hpp"
#include "relayrate/source_model.hpp"
#include "relayrate/storage.hpp"

namespace relayrate {

// Source files are JSON with a mandatory "type" of "tabular", "component"
// or "profile"; unknown keys are rejected.  See README for the schemas.
struct LoadedSource {
  SourceModel model;
  std::string type;
  std::vector<std::string> warnings;  // profile validation warnings
};

LoadedSource parse_source_json(const std::string& text, double tol = kDefaultTol,
                               bool strict = false);
LoadedSource load_source(const std::string& path, double tol = kDefaultTol,
                         bool strict = false);

// Channel files carry either noise entropies directly or noise pmfs over
// the field, from which entropies are computed.
ChannelSpec parse_channel_json(const std::string& text,
                               double tol = kDefaultTol);
ChannelSpec load_channel(const std::string& path, double tol = kDefaultTol);

// Writers for the generator commands.
std::string source_json(const TabularPmf& pmf);
std::string source_json(const ComponentSource& source);

// JSON fragments for analysis output.  All numbers are rounded to 12
// significant digits.
std::string region_json(const RegionConstraints& region);
std::string rate_tuple_json(const RateTuple& r);
std::string storage_report_json(const StorageReport& report);

// Rounds through a %.12g representation so emitted JSON carries
// 12-significant-digit decimals.
double round_12sig(double v);

}  // namespace relayrate
