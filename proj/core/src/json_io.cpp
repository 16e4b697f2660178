#include "relayrate/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relayrate/errors.hpp"

namespace relayrate {

using nlohmann::json;

namespace {

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, origin + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::ParseError, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error(Errc::ParseError,
                  "unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(Errc::ParseError,
                "missing key \"" + std::string(key) + "\" in " + where);
  }
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw Error(Errc::ParseError, where + " must be a number");
  }
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw Error(Errc::ParseError, where + " must be an integer");
  }
  return j.get<int>();
}

std::vector<int> as_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw Error(Errc::ParseError, where + " must be an array");
  }
  std::vector<int> out;
  out.reserve(j.size());
  for (const json& v : j) out.push_back(as_int(v, where + " entry"));
  return out;
}

SubsetMask parse_subset(const json& j, int num_users,
                        const std::string& where) {
  return subset_from_users(as_int_list(j, where), num_users);
}

LoadedSource parse_tabular(const json& j, double tol) {
  check_keys(j, {"type", "users", "alphabets", "pmf"}, "tabular source");
  const int users = as_int(require(j, "users", "tabular source"), "\"users\"");
  TabularPmf pmf;
  for (const json& a :
       require(j, "alphabets", "tabular source")) {
    pmf.alphabet_sizes.push_back(as_int(a, "alphabet size"));
  }
  if (static_cast<int>(pmf.alphabet_sizes.size()) != users) {
    throw Error(Errc::ParseError,
                "\"alphabets\" must list one size per user");
  }
  const json& rows = require(j, "pmf", "tabular source");
  if (!rows.is_array()) {
    throw Error(Errc::ParseError, "\"pmf\" must be an array");
  }
  for (const json& row : rows) {
    check_keys(row, {"symbols", "p"}, "pmf entry");
    TabularPmf::Entry entry;
    entry.symbols = as_int_list(require(row, "symbols", "pmf entry"),
                                "\"symbols\"");
    entry.p = as_number(require(row, "p", "pmf entry"), "\"p\"");
    pmf.entries.push_back(std::move(entry));
  }
  return LoadedSource{validate_tabular(pmf, tol), "tabular", {}};
}

LoadedSource parse_component(const json& j, double tol) {
  (void)tol;
  check_keys(j, {"type", "users", "components"}, "component source");
  const int users =
      as_int(require(j, "users", "component source"), "\"users\"");
  const json& rows = require(j, "components", "component source");
  if (!rows.is_array()) {
    throw Error(Errc::ParseError, "\"components\" must be an array");
  }
  std::map<SubsetMask, double> bits;
  for (const json& row : rows) {
    check_keys(row, {"subset", "bits"}, "component entry");
    const SubsetMask subset = parse_subset(
        require(row, "subset", "component entry"), users, "\"subset\"");
    const double rate =
        as_number(require(row, "bits", "component entry"), "\"bits\"");
    if (!bits.emplace(subset, rate).second) {
      throw Error(Errc::DuplicateEntry, "component subset " +
                                            subset_to_string(subset) +
                                            " listed twice");
    }
  }
  return LoadedSource{make_component(users, bits).to_model(), "component", {}};
}

LoadedSource parse_profile(const json& j, double tol, bool strict) {
  check_keys(j, {"type", "users", "entropies"}, "profile source");
  EntropyProfile profile;
  profile.num_users =
      as_int(require(j, "users", "profile source"), "\"users\"");
  const json& rows = require(j, "entropies", "profile source");
  if (!rows.is_array()) {
    throw Error(Errc::ParseError, "\"entropies\" must be an array");
  }
  for (const json& row : rows) {
    check_keys(row, {"subset", "H"}, "entropy entry");
    const SubsetMask subset =
        parse_subset(require(row, "subset", "entropy entry"),
                     profile.num_users, "\"subset\"");
    const double h = as_number(require(row, "H", "entropy entry"), "\"H\"");
    if (!profile.values.emplace(subset, h).second) {
      throw Error(Errc::DuplicateEntry,
                  "profile subset " + subset_to_string(subset) +
                      " listed twice");
    }
  }
  ProfileValidation validated = profile_validate(profile, tol, strict);
  return LoadedSource{std::move(validated.model), "profile",
                      std::move(validated.warnings)};
}

}  // namespace

LoadedSource parse_source_json(const std::string& text, double tol,
                               bool strict) {
  const json j = parse_text(text, "source");
  if (!j.is_object()) {
    throw Error(Errc::ParseError, "source file must hold a JSON object");
  }
  const json& type = require(j, "type", "source");
  if (type == "tabular") return parse_tabular(j, tol);
  if (type == "component") return parse_component(j, tol);
  if (type == "profile") return parse_profile(j, tol, strict);
  throw Error(Errc::ParseError,
              "unknown source type " + type.dump() +
                  " (expected \"tabular\", \"component\" or \"profile\")");
}

LoadedSource load_source(const std::string& path, double tol, bool strict) {
  try {
    return parse_source_json(read_file(path), tol, strict);
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

ChannelSpec parse_channel_json(const std::string& text, double tol) {
  const json j = parse_text(text, "channel");
  if (!j.is_object()) {
    throw Error(Errc::ParseError, "channel file must hold a JSON object");
  }

  if (j.contains("uplink_noise_pmf") || j.contains("downlink_noise_pmfs")) {
    check_keys(j, {"field_order", "uplink_noise_pmf", "downlink_noise_pmfs"},
               "channel");
    const json& up = require(j, "uplink_noise_pmf", "channel");
    if (!up.is_array() || up.size() < 2) {
      throw Error(Errc::ParseError,
                  "\"uplink_noise_pmf\" must be an array of length >= 2");
    }
    const int q = static_cast<int>(up.size());
    if (j.contains("field_order") &&
        as_int(j["field_order"], "\"field_order\"") != q) {
      throw Error(Errc::ParseError,
                  "\"field_order\" disagrees with the noise pmf length");
    }
    auto read_pmf = [&](const json& arr, const std::string& where) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != q) {
        throw Error(Errc::ParseError,
                    where + " must be an array of length " +
                        std::to_string(q));
      }
      std::vector<double> pmf;
      pmf.reserve(q);
      for (const json& v : arr) pmf.push_back(as_number(v, where + " entry"));
      return pmf_entropy(pmf, tol);
    };
    const double hz = read_pmf(up, "\"uplink_noise_pmf\"");
    const json& downs = require(j, "downlink_noise_pmfs", "channel");
    if (!downs.is_array()) {
      throw Error(Errc::ParseError,
                  "\"downlink_noise_pmfs\" must be an array of pmfs");
    }
    std::vector<double> hn;
    for (const json& d : downs) {
      hn.push_back(read_pmf(d, "downlink noise pmf"));
    }
    return make_channel(q, hz, std::move(hn), tol);
  }

  check_keys(j,
             {"field_order", "uplink_noise_entropy",
              "downlink_noise_entropies"},
             "channel");
  const int q = as_int(require(j, "field_order", "channel"),
                       "\"field_order\"");
  const double hz = as_number(
      require(j, "uplink_noise_entropy", "channel"),
      "\"uplink_noise_entropy\"");
  const json& downs = require(j, "downlink_noise_entropies", "channel");
  if (!downs.is_array()) {
    throw Error(Errc::ParseError,
                "\"downlink_noise_entropies\" must be an array");
  }
  std::vector<double> hn;
  for (const json& v : downs) {
    hn.push_back(as_number(v, "downlink noise entropy"));
  }
  return make_channel(q, hz, std::move(hn), tol);
}

ChannelSpec load_channel(const std::string& path, double tol) {
  try {
    return parse_channel_json(read_file(path), tol);
  } catch (Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

namespace {

json subset_json(SubsetMask s) {
  json arr = json::array();
  for (int u : subset_users(s)) arr.push_back(u);
  return arr;
}

}  // namespace

std::string source_json(const TabularPmf& pmf) {
  json j;
  j["type"] = "tabular";
  j["users"] = pmf.num_users();
  j["alphabets"] = pmf.alphabet_sizes;
  json rows = json::array();
  for (const TabularPmf::Entry& e : pmf.entries) {
    rows.push_back(json{{"symbols", e.symbols}, {"p", e.p}});
  }
  j["pmf"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string source_json(const ComponentSource& source) {
  json j;
  j["type"] = "component";
  j["users"] = source.num_users;
  json rows = json::array();
  for (const auto& [subset, rate] : source.bits) {
    rows.push_back(json{{"subset", subset_json(subset)}, {"bits", rate}});
  }
  j["components"] = std::move(rows);
  return j.dump(2) + "\n";
}

double round_12sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string region_json(const RegionConstraints& region) {
  json rows = json::array();
  for (const RegionConstraint& c : region.constraints) {
    rows.push_back(json{{"subset", subset_json(c.subset)},
                        {"bound", round_12sig(c.bound)}});
  }
  return json{{"constraints", std::move(rows)}}.dump();
}

std::string rate_tuple_json(const RateTuple& r) {
  json rates = json::array();
  for (double v : r.rates) rates.push_back(round_12sig(v));
  return json{{"rates", std::move(rates)}}.dump();
}

std::string storage_report_json(const StorageReport& report) {
  json rates = json::array();
  for (double v : report.argmin.rates) rates.push_back(round_12sig(v));
  json j{{"optimal_rate", round_12sig(report.optimal_rate)},
         {"argmin", std::move(rates)},
         {"closed_form_applicable", report.closed_form_applicable},
         {"closed_form_value", round_12sig(report.closed_form_value)}};
  return j.dump();
}

}  // namespace relayrate
