// relayrate: entropic analysis of multi-terminal data-exchange sources.
//
// Subcommands: info, imeasure, balanced, pstar, kappa, storage, gen.
// Exit codes: 0 success/affirmative, 1 negative verdict, 2 input error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relayrate/diagram.hpp"
#include "relayrate/errors.hpp"
#include "relayrate/imeasure.hpp"
#include "relayrate/json_io.hpp"
#include "relayrate/rate_region.hpp"
#include "relayrate/relay.hpp"
#include "relayrate/source_model.hpp"
#include "relayrate/storage.hpp"

namespace {

using nlohmann::json;
using namespace relayrate;

struct Options {
  double tol = kDefaultTol;
  bool as_json = false;
  bool strict = false;
};

std::string fmt6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string out = buf;
  if (out == "-0.000000") out.erase(0, 1);  // tiny negatives round to zero
  return out;
}

std::string fmt_tuple(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt6(v[i]);
  }
  out += ")";
  return out;
}

json tuple_json(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(round_12sig(x));
  return arr;
}

json subset_json(SubsetMask s) {
  json arr = json::array();
  for (int u : subset_users(s)) arr.push_back(u);
  return arr;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

LoadedSource load_analysis_source(const std::string& path,
                                  const Options& opts) {
  LoadedSource source = load_source(path, opts.tol, opts.strict);
  if (source.model.num_users() < 2) {
    throw Error(Errc::UserCountOutOfRange,
                path + ": users must be >= 2 for analysis");
  }
  for (const std::string& w : source.warnings) {
    std::cerr << "warning: " << w << "\n";  // stdout stays machine-clean
  }
  return source;
}

int cmd_info(const std::string& path, const Options& opts) {
  const LoadedSource source = load_analysis_source(path, opts);
  const SourceModel& model = source.model;
  const std::vector<double> h = exchange_requirements(model);

  if (opts.as_json) {
    json entropies = json::array();
    for (SubsetMask s : sorted_subsets(model.num_users(), false, true)) {
      entropies.push_back(json{{"subset", subset_json(s)},
                               {"H", round_12sig(model.entropy(s))}});
    }
    emit(json{{"users", model.num_users()},
              {"type", source.type},
              {"entropies", std::move(entropies)},
              {"h", tuple_json(h)},
              {"warnings", source.warnings}});
    return 0;
  }

  std::cout << "users: " << model.num_users() << "\n";
  std::cout << "type: " << source.type << "\n";
  for (SubsetMask s : sorted_subsets(model.num_users(), false, true)) {
    std::cout << "H(" << subset_to_string(s)
              << ") = " << fmt6(model.entropy(s)) << "\n";
  }
  std::cout << "h = " << fmt_tuple(h) << "\n";
  return 0;
}

int cmd_imeasure(const std::string& path, const std::string& svg_path,
                 const Options& opts) {
  const LoadedSource source = load_analysis_source(path, opts);
  const SourceModel& model = source.model;
  const AtomTable atoms = atom_table(model);

  std::string notice;
  std::string written_kind;
  if (!svg_path.empty()) {
    const DiagramDocument doc = render_diagram(model, true);
    if (doc.kind != DiagramDocument::Kind::Svg) {
      notice =
          "notice: the venn rendering needs exactly 3 users; wrote the "
          "table instead";
    }
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) {
      throw Error(Errc::ParseError, "cannot write " + svg_path);
    }
    out << doc.text;
    written_kind =
        doc.kind == DiagramDocument::Kind::Svg ? "svg" : "table";
  }

  if (opts.as_json) {
    json rows = json::array();
    for (SubsetMask k : sorted_subsets(model.num_users(), false, true)) {
      rows.push_back(
          json{{"subset", subset_json(k)}, {"I", round_12sig(atoms.at(k))}});
    }
    json j{{"users", model.num_users()}, {"atoms", std::move(rows)}};
    if (!svg_path.empty()) {
      j["diagram"] = written_kind;
      j["path"] = svg_path;
    }
    emit(j);
    return 0;
  }

  if (!notice.empty()) std::cout << notice << "\n";
  for (SubsetMask k : sorted_subsets(model.num_users(), false, true)) {
    std::cout << "I(" << subset_to_string(k) << ") = " << fmt6(atoms.at(k))
              << "\n";
  }
  if (!svg_path.empty()) {
    std::cout << "wrote " << written_kind << " to " << svg_path << "\n";
  }
  return 0;
}

int cmd_balanced(const std::string& path, const Options& opts) {
  const LoadedSource source = load_analysis_source(path, opts);
  const BalanceReport report = balanced_check(source.model, opts.tol);

  if (opts.as_json) {
    json rows = json::array();
    for (const auto& row : report.per_k) {
      rows.push_back(json{{"k", row.k},
                          {"mu_max", round_12sig(row.mu_max)},
                          {"mu_min", round_12sig(row.mu_min)},
                          {"gap", round_12sig(row.gap)},
                          {"margin", round_12sig(row.margin)},
                          {"pass", row.pass}});
    }
    emit(json{{"per_k", std::move(rows)},
              {"balanced", report.balanced},
              {"negative_atoms", report.negative_atoms}});
    return report.balanced ? 0 : 1;
  }

  for (const auto& row : report.per_k) {
    std::cout << "k=" << row.k << ": mu_max=" << fmt6(row.mu_max)
              << " mu_min=" << fmt6(row.mu_min) << " gap=" << fmt6(row.gap)
              << " margin=" << fmt6(row.margin) << " "
              << (row.pass ? "pass" : "FAIL") << "\n";
  }
  if (report.negative_atoms) {
    std::cout << "note: negative atoms among the inspected cardinalities\n";
  }
  if (report.per_k.empty()) {
    std::cout << "balanced: yes (vacuous for 2 users)\n";
  } else {
    std::cout << "balanced: " << (report.balanced ? "yes" : "no") << "\n";
  }
  return report.balanced ? 0 : 1;
}

int cmd_pstar(const std::string& path, const Options& opts) {
  const LoadedSource source = load_analysis_source(path, opts);
  const PstarResult res = in_pstar(source.model, opts.tol);
  const RegionMembership& d = res.detail;

  if (opts.as_json) {
    json j{{"r_star", tuple_json(res.witness.rates)},
           {"member", res.member},
           {"worst_slack", round_12sig(d.worst_slack)}};
    if (d.worst_is_nonneg) {
      j["worst_facet"] = json{{"nonnegativity_of_user", d.worst_user}};
    } else {
      j["worst_facet"] = json{{"subset", subset_json(d.worst_subset)}};
    }
    emit(j);
    return res.member ? 0 : 1;
  }

  std::cout << "r* = " << fmt_tuple(res.witness.rates) << "\n";
  std::cout << "worst slack = " << fmt6(d.worst_slack);
  if (d.worst_is_nonneg) {
    std::cout << " at nonnegativity of r_" << d.worst_user << "\n";
  } else {
    std::cout << " at subset " << subset_to_string(d.worst_subset) << "\n";
  }
  std::cout << "p in P*: " << (res.member ? "yes" : "no") << "\n";
  return res.member ? 0 : 1;
}

int cmd_kappa(const std::string& path, const std::string& channel_path,
              const Options& opts) {
  const LoadedSource source = load_analysis_source(path, opts);
  const ChannelSpec channel = load_channel(channel_path, opts.tol);
  const double exact_tol = std::max(opts.tol, 1e-7);
  const KappaResult kb =
      kappa_bounds(source.model, channel, exact_tol, opts.tol);
  const std::vector<double> c = capacity_terms(channel);

  if (opts.as_json) {
    json j{{"capacities", tuple_json(c)}};
    switch (kb.kind) {
      case KappaResult::Kind::Exact:
        j["verdict"] = "exact";
        j["kappa"] = round_12sig(kb.lower);
        j["lower"] = round_12sig(kb.lower);
        j["upper"] = round_12sig(kb.upper);
        j["witness"] = tuple_json(kb.witness.rates);
        break;
      case KappaResult::Kind::Bounds:
        j["verdict"] = "bounds";
        j["lower"] = round_12sig(kb.lower);
        j["upper"] = round_12sig(kb.upper);
        j["witness"] = tuple_json(kb.witness.rates);
        break;
      case KappaResult::Kind::Unbounded:
        j["verdict"] = "unbounded";
        break;
    }
    emit(j);
    return 0;
  }

  std::cout << "C = " << fmt_tuple(c) << "\n";
  switch (kb.kind) {
    case KappaResult::Kind::Exact:
      std::cout << "lower bound (psi) = " << fmt6(kb.lower) << "\n";
      std::cout << "min relay load (upsilon) = " << fmt6(kb.upper)
                << " at r = " << fmt_tuple(kb.witness.rates) << "\n";
      std::cout << "verdict: EXACT kappa* = " << fmt6(kb.lower) << "\n";
      break;
    case KappaResult::Kind::Bounds:
      std::cout << "lower bound (psi) = " << fmt6(kb.lower) << "\n";
      std::cout << "min relay load (upsilon) = " << fmt6(kb.upper)
                << " at r = " << fmt_tuple(kb.witness.rates) << "\n";
      std::cout << "verdict: BOUNDS [" << fmt6(kb.lower) << ", "
                << fmt6(kb.upper) << "]\n";
      break;
    case KappaResult::Kind::Unbounded:
      std::cout << "verdict: UNBOUNDED (a zero-capacity link has a positive "
                   "exchange requirement)\n";
      break;
  }
  return 0;
}

int cmd_storage(const std::string& path, const Options& opts) {
  const LoadedSource source = load_analysis_source(path, opts);
  const StorageReport report = optimal_storage_rate(source.model, opts.tol);

  if (opts.as_json) {
    std::cout << storage_report_json(report) << "\n";
    return 0;
  }

  std::cout << "optimal storage rate = " << fmt6(report.optimal_rate) << "\n";
  std::cout << "argmin r = " << fmt_tuple(report.argmin.rates) << "\n";
  std::cout << "closed form |h|/(L-1) = " << fmt6(report.closed_form_value)
            << (report.closed_form_applicable
                    ? " (applicable: p in P*)"
                    : " (not applicable: p not in P*)")
            << "\n";
  return 0;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::ParseError, "cannot write " + path);
  }
  out << text;
}

int report_written(const std::string& path, const Options& opts) {
  if (opts.as_json) {
    emit(json{{"written", path}});
  } else {
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_gen_component(int users, const std::vector<std::string>& parts,
                      const std::string& out_path, const Options& opts) {
  std::map<SubsetMask, double> bits;
  for (const std::string& part : parts) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::ParseError,
                  "component \"" + part + "\" must look like 1,2=0.5");
    }
    std::vector<int> labels;
    std::string head = part.substr(0, eq);
    std::size_t pos = 0;
    while (pos < head.size()) {
      std::size_t next = head.find(',', pos);
      if (next == std::string::npos) next = head.size();
      try {
        labels.push_back(std::stoi(head.substr(pos, next - pos)));
      } catch (const std::exception&) {
        throw Error(Errc::ParseError,
                    "bad user label in component \"" + part + "\"");
      }
      pos = next + 1;
    }
    double rate = 0.0;
    try {
      rate = std::stod(part.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad rate in component \"" + part + "\"");
    }
    const SubsetMask subset = subset_from_users(labels, users);
    if (!bits.emplace(subset, rate).second) {
      throw Error(Errc::DuplicateEntry, "component subset " +
                                            subset_to_string(subset) +
                                            " given twice");
    }
  }
  const ComponentSource source = make_component(users, bits);
  write_text_file(out_path, source_json(source));
  return report_written(out_path, opts);
}

int cmd_gen_sensor(double rho, const std::string& sigmas_csv,
                   const std::string& out_path, const Options& opts) {
  std::vector<double> sigmas;
  std::size_t pos = 0;
  while (pos < sigmas_csv.size()) {
    std::size_t next = sigmas_csv.find(',', pos);
    if (next == std::string::npos) next = sigmas_csv.size();
    try {
      sigmas.push_back(std::stod(sigmas_csv.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad sigma list \"" + sigmas_csv + "\"");
    }
    pos = next + 1;
  }
  const TabularPmf pmf = make_sensor(rho, sigmas);
  write_text_file(out_path, source_json(pmf));
  return report_written(out_path, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic structure, exchange regions, source-channel rate "
               "bounds and storage rates for multi-terminal sources"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Options opts;
  app.add_option("--tol", opts.tol, "comparison tolerance")
      ->envname("RELAYRATE_TOL")
      ->capture_default_str();
  app.add_flag("--json", opts.as_json, "emit one JSON object on stdout");
  app.add_flag("--strict", opts.strict,
               "treat non-entropic profile warnings as errors");

  std::string source_path, channel_path, svg_path, out_path, sigmas_csv;
  std::vector<std::string> parts;
  int gen_users = 0;
  double rho = 0.0;

  CLI::App* info =
      app.add_subcommand("info", "subset entropies and h")->fallthrough();
  info->add_option("source", source_path, "source JSON file")->required();

  CLI::App* imeasure =
      app.add_subcommand("imeasure", "information-diagram atoms")
          ->fallthrough();
  imeasure->add_option("source", source_path, "source JSON file")->required();
  imeasure->add_option("--svg", svg_path,
                       "write a venn diagram (3 users) to this path");

  CLI::App* balanced =
      app.add_subcommand("balanced", "balance test")->fallthrough();
  balanced->add_option("source", source_path, "source JSON file")->required();

  CLI::App* pstar =
      app.add_subcommand("pstar", "P* membership test")->fallthrough();
  pstar->add_option("source", source_path, "source JSON file")->required();

  CLI::App* kappa = app.add_subcommand("kappa", "source-channel rate bounds")
                        ->fallthrough();
  kappa->add_option("source", source_path, "source JSON file")->required();
  kappa->add_option("--channel", channel_path, "channel JSON file")
      ->required();

  CLI::App* storage =
      app.add_subcommand("storage", "optimal storage rate")->fallthrough();
  storage->add_option("source", source_path, "source JSON file")->required();

  CLI::App* gen = app.add_subcommand("gen", "write a source file")
                      ->fallthrough();
  gen->require_subcommand(1);
  CLI::App* gen_component =
      gen->add_subcommand("component", "independent uniform components")
          ->fallthrough();
  gen_component->add_option("--users", gen_users, "number of users")
      ->required();
  gen_component
      ->add_option("--part", parts,
                   "component as USERS=BITS, e.g. 1,2=1.5 (repeatable)")
      ->take_all();
  gen_component->add_option("--out", out_path, "output path")->required();
  CLI::App* gen_sensor =
      gen->add_subcommand("sensor", "noisy sensors observing a shared bit")
          ->fallthrough();
  gen_sensor->add_option("--rho", rho, "Pr{B=0} of the hidden event")
      ->required();
  gen_sensor
      ->add_option("--sigmas", sigmas_csv,
                   "comma-separated Pr{E_l=0}, one per sensor")
      ->required();
  gen_sensor->add_option("--out", out_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (info->parsed()) return cmd_info(source_path, opts);
    if (imeasure->parsed()) return cmd_imeasure(source_path, svg_path, opts);
    if (balanced->parsed()) return cmd_balanced(source_path, opts);
    if (pstar->parsed()) return cmd_pstar(source_path, opts);
    if (kappa->parsed()) return cmd_kappa(source_path, channel_path, opts);
    if (storage->parsed()) return cmd_storage(source_path, opts);
    if (gen_component->parsed()) {
      return cmd_gen_component(gen_users, parts, out_path, opts);
    }
    if (gen_sensor->parsed()) {
      return cmd_gen_sensor(rho, sigmas_csv, out_path, opts);
    }
  } catch (const relayrate::Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return e.code() == Errc::NumericalBreakdown ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
