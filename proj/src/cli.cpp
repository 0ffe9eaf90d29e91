#include "latinpat/cli.hpp"

#include "latinpat/analysis.hpp"
#include "latinpat/density.hpp"
#include "latinpat/error.hpp"
#include "latinpat/generators.hpp"
#include "latinpat/io.hpp"
#include "latinpat/latinon.hpp"
#include "latinpat/latinon_io.hpp"
#include "latinpat/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace latinpat {

namespace {

using nlohmann::json;

constexpr int kSchema = 1;

struct GenerationFailure {
  std::string message;
};

json exact_value(const Rational& r) { return {{"value", r.str()}, {"float", r.to_double()}}; }

json estimate_json(const McEstimate& e) {
  json j = {{"estimate", e.estimate}, {"std_error", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
  if (e.hits) j["hits"] = *e.hits;
  return j;
}

json pattern_json(const GeneralizedPattern& g) {
  json rows = json::array();
  for (int r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < g.cols(); ++c) {
      if (g.is_hole(r, c)) {
        row.push_back("*");
      } else {
        row.push_back(g.at(r, c));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json pattern_json(const Pattern& p) { return pattern_json(GeneralizedPattern::from_pattern(p)); }

json report_json(const CertReport& report) {
  json densities = json::array();
  for (std::size_t i = 0; i < report.densities.size(); ++i) {
    json d = {{"id", i},
              {"pattern", pattern_json(pattern_from_id(kCertRows, kCertCols, PatternId{i}))},
              {"value", report.densities[i].str()},
              {"float", report.densities[i].to_double()}};
    if (!report.estimates.empty()) d["std_error"] = report.estimates[i].std_error;
    densities.push_back(std::move(d));
  }
  json j = {{"schema", kSchema},
            {"command", "certify"},
            {"order", report.order},
            {"method", report.method},
            {"threshold", exact_value(report.threshold)},
            {"max_dev", exact_value(report.max_dev)},
            {"l1_dev", exact_value(report.l1_dev)},
            {"tie_fraction", exact_value(report.tie_fraction)},
            {"corner_statistic", exact_value(report.corner)},
            {"verdict", report.pass ? "pass" : "fail"},
            {"densities", std::move(densities)}};
  if (report.samples) j["samples"] = *report.samples;
  if (report.seed) j["seed"] = *report.seed;
  return j;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(Errc::Parse, "cannot write '" + path + "'");
  file << doc.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
std::vector<T> parse_numbers(const std::string& text, const char* what) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw Error(Errc::Parse, std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::TooLarge:
    case Errc::EnumerationBoundExceeded:
      return kExitResourceBound;
    default:
      return kExitInputError;
  }
}

struct Options {
  unsigned threads = 0;

  // gen
  std::string kind;
  int order = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> steps;
  std::string inner;
  std::string output;

  // shared inputs
  std::string square;
  std::string pattern;
  std::string method;
  std::uint64_t samples = 1'000'000;
  int k = 0;
  int l = 0;
  std::vector<int> all;
  std::string latinon;
  std::string threshold;
  std::string json_out;
  std::optional<std::uint64_t> id;
  bool classify = false;

  // sweep
  std::string kinds;
  std::string orders;
  std::string seeds;
  std::string targets;
};

int cmd_gen(const Options& o, std::ostream& out) {
  std::optional<LatinSquare> inner;
  if (!o.inner.empty()) inner = read_square_file(o.inner);
  std::optional<LatinSquare> square;
  try {
    square = generate_square(o.kind, o.order, o.seed, o.steps, inner ? &*inner : nullptr);
  } catch (const Error& e) {
    throw GenerationFailure{e.what()};
  }
  if (o.output.empty()) {
    write_square(out, *square);
    return kExitOk;
  }
  std::ofstream file(o.output);
  if (!file) throw Error(Errc::Parse, "cannot write '" + o.output + "'");
  file << "# kind " << o.kind << " seed " << o.seed << '\n';
  write_square(file, *square);
  out << "order " << square->order() << " kind " << o.kind << '\n';
  return kExitOk;
}

int cmd_density(const Options& o, std::ostream& out) {
  const LatinSquare square = read_square_file(o.square);
  const GeneralizedPattern pattern = read_pattern_file(o.pattern);
  json doc = {{"schema", kSchema},
              {"command", "density"},
              {"order", square.order()},
              {"pattern", pattern_json(pattern)},
              {"method", o.method}};
  if (o.method == "exact") {
    const Rational d = generalized_exact_density(square, pattern);
    doc["value"] = d.str();
    doc["float"] = d.to_double();
  } else {
    doc.update(estimate_json(mc_density(square, pattern, o.samples, o.seed, o.threads)));
  }
  emit(doc, o.json_out, out);
  return kExitOk;
}

int cmd_profile(const Options& o, std::ostream& out) {
  const LatinSquare square = read_square_file(o.square);
  json doc = {{"schema", kSchema}, {"command", "profile"}, {"order", square.order()}, {"k", o.k}, {"l", o.l},
              {"method", o.method}};
  if (o.method == "exact") {
    const DensityProfile p = exact_profile(square, o.k, o.l, o.threads);
    doc["total"] = p.total.get_str();
    doc["ties"] = p.ties;
    doc["tie_fraction"] = exact_value(p.tie_fraction());
    doc["counts"] = p.counts;
  } else {
    const McProfile p = mc_profile(square, o.k, o.l, o.samples, o.seed, o.threads);
    doc["samples"] = p.samples;
    doc["seed"] = p.seed;
    doc["ties"] = p.ties;
    doc["hits"] = p.hits;
  }
  emit(doc, o.json_out, out);
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const LatinSquare square = read_square_file(o.square);
  const Rational threshold = Rational::parse(o.threshold);
  if (threshold.sign() < 0) throw Error(Errc::Parse, "threshold must be non-negative");
  const CertReport report = o.method == "exact"
                                ? certify(exact_profile(square, kCertRows, kCertCols, o.threads), threshold)
                                : certify(mc_profile(square, kCertRows, kCertCols, o.samples, o.seed, o.threads),
                                          threshold);
  emit(report_json(report), o.json_out, out);
  return report.pass ? kExitOk : kExitCertFail;
}

int cmd_latinon_density(const Options& o, std::ostream& out) {
  const StepLatinon latinon = load_latinon(o.latinon);
  json doc = {{"schema", kSchema}, {"command", "latinon-density"}, {"latinon", o.latinon}, {"method", o.method}};
  json values = json::array();
  const auto one = [&](const GeneralizedPattern& g, std::optional<PatternId> id, std::optional<Rational> known) {
    json v = {{"pattern", pattern_json(g)}};
    if (id) v["id"] = id->value;
    if (o.method == "exact") {
      const Rational d = known ? *known : exact_density(latinon, g);
      v["value"] = d.str();
      v["float"] = d.to_double();
    } else {
      v.update(estimate_json(rb_mc_density(latinon, g, o.samples, o.seed, o.threads)));
    }
    values.push_back(std::move(v));
  };
  if (!o.pattern.empty()) {
    one(read_pattern_file(o.pattern), std::nullopt, std::nullopt);
  } else {
    const int k = o.all[0];
    const int l = o.all[1];
    const auto patterns = enumerate_patterns(k, l);
    std::vector<Rational> exact;
    if (o.method == "exact") exact = exact_all_densities(latinon, k, l);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      one(GeneralizedPattern::from_pattern(patterns[i]), PatternId{i},
          exact.empty() ? std::nullopt : std::optional<Rational>(exact[i]));
    }
  }
  doc["densities"] = std::move(values);
  emit(doc, o.json_out, out);
  return kExitOk;
}

int cmd_latinon_check(const Options& o, std::ostream& out) {
  const StepLatinon latinon = load_latinon(o.latinon);
  const AxiomReport report = check_axioms(latinon);
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", axiom_kind_name(v.kind)},
                          {"description", v.description},
                          {"lhs", v.lhs.str()},
                          {"rhs", v.rhs.str()}});
  }
  json doc = {{"schema", kSchema},
              {"command", "latinon-check"},
              {"latinon", o.latinon},
              {"verdict", report.pass() ? "pass" : "fail"},
              {"violations", std::move(violations)}};
  emit(doc, o.json_out, out);
  return report.pass() ? kExitOk : kExitCertFail;
}

int cmd_patterns(const Options& o, std::ostream& out) {
  json doc = {{"schema", kSchema}, {"command", "patterns"}, {"k", o.k}, {"l", o.l}};
  json list = json::array();
  if (o.id) {
    const Pattern p = pattern_from_id(o.k, o.l, PatternId{*o.id});
    list.push_back({{"id", *o.id}, {"pattern", pattern_json(p)}});
  } else {
    const auto patterns = enumerate_patterns(o.k, o.l);
    const bool classify = o.classify && o.k == kCertRows && o.l == kCertCols;
    std::size_t same = 0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      json p = {{"id", i}, {"pattern", pattern_json(patterns[i])}};
      if (classify) {
        const bool s = five_six_same_column(patterns[i]);
        same += s;
        p["five_six_same_column"] = s;
        p["corner_weight"] = corner_weight(patterns[i]).str();
      }
      list.push_back(std::move(p));
    }
    doc["count"] = patterns.size();
    if (classify) doc["five_six_same_column_count"] = same;
  }
  doc["patterns"] = std::move(list);
  emit(doc, o.json_out, out);
  return kExitOk;
}

int cmd_eliminable(const Options& o, std::ostream& out) {
  const GeneralizedPattern g = read_pattern_file(o.pattern);
  const EliminabilityResult r = is_eliminable(g);
  json doc = {{"schema", kSchema}, {"command", "eliminable"}, {"pattern", pattern_json(g)},
              {"eliminable", r.eliminable}, {"entries", g.constrained()}};
  if (r.eliminable) {
    doc["witness"] = r.witness;
    std::string labels(r.labels.begin(), r.labels.end());
    doc["labels"] = labels;
  }
  if (!o.latinon.empty() && r.eliminable) {
    const Rational d = eliminable_density_check(load_latinon(o.latinon), g);
    const Rational expected(BigInt(1), factorial(static_cast<unsigned>(g.constrained())));
    doc["latinon"] = o.latinon;
    doc["density"] = exact_value(d);
    doc["expected"] = exact_value(expected);
    doc["matches"] = d == expected;
  }
  emit(doc, o.json_out, out);
  return kExitOk;
}

int cmd_suite72(const Options& o, std::ostream& out) {
  json doc = {{"schema", kSchema}, {"command", "suite72"}};
  std::optional<StepLatinon> latinon;
  if (!o.latinon.empty()) {
    latinon = load_latinon(o.latinon);
    doc["latinon"] = o.latinon;
  }
  const Rational target(1, 120);
  json list = json::array();
  std::size_t off_target = 0;
  for (const auto& g : suite_72()) {
    json entry = {{"pattern", pattern_json(g)}};
    if (latinon) {
      const Rational d = exact_density(*latinon, g);
      entry["density"] = exact_value(d);
      entry["equals_1_120"] = d == target;
      off_target += d != target;
    }
    list.push_back(std::move(entry));
  }
  doc["count"] = list.size();
  if (latinon) doc["off_target"] = off_target;
  doc["patterns"] = std::move(list);
  emit(doc, o.json_out, out);
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig config;
  config.kinds = split_list(o.kinds);
  config.orders = parse_numbers<int>(o.orders, "order");
  config.seeds = parse_numbers<std::uint64_t>(o.seeds, "seed");
  for (auto id : parse_numbers<std::uint64_t>(o.targets, "target")) config.targets.push_back(PatternId{id});
  config.method = o.method;
  config.samples = o.samples;
  config.threads = o.threads;
  const auto rows = sweep(config);
  if (o.output.empty()) {
    write_sweep_csv(out, rows);
  } else {
    std::ofstream file(o.output);
    if (!file) throw Error(Errc::Parse, "cannot write '" + o.output + "'");
    write_sweep_csv(file, rows);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern densities and quasirandomness checks for Latin squares and step Latinons"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores); output does not depend on it");

  const std::vector<std::string> square_kinds{"cyclic", "jm", "parity-blowup", "quadrant-blowup"};
  const auto add_mc = [&o](CLI::App* sub) {
    sub->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "64-bit seed");
  };

  auto* gen = app.add_subcommand("gen", "Generate a Latin square");
  gen->add_option("--kind", o.kind)->required()->check(CLI::IsMember(square_kinds));
  gen->add_option("--order", o.order)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed);
  gen->add_option("--steps", o.steps, "Jacobson-Matthews moves (default 5 n^3)")->check(CLI::PositiveNumber);
  gen->add_option("--inner", o.inner, "Inner square file for blow-ups");
  gen->add_option("-o,--output", o.output);

  auto* density = app.add_subcommand("density", "Density of a (generalized) pattern in a square");
  density->add_option("square", o.square)->required();
  density->add_option("--pattern", o.pattern)->required();
  density->add_option("--method", o.method)->check(CLI::IsMember({"exact", "mc"}))->default_val("exact");
  add_mc(density);
  density->add_option("--json", o.json_out);

  auto* profile = app.add_subcommand("profile", "Counts of every k x l pattern in a square");
  profile->add_option("square", o.square)->required();
  profile->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  profile->add_option("--l", o.l)->required()->check(CLI::PositiveNumber);
  profile->add_option("--method", o.method)->check(CLI::IsMember({"exact", "mc"}))->default_val("exact");
  add_mc(profile);
  profile->add_option("--json", o.json_out);

  auto* cert = app.add_subcommand("certify", "2x3 quasirandomness report");
  cert->add_option("square", o.square)->required();
  cert->add_option("--method", o.method)->check(CLI::IsMember({"exact", "mc"}))->default_val("exact");
  add_mc(cert);
  cert->add_option("--threshold", o.threshold, "Pass bar on max |t(A) - 1/720|, as p/q")->required();
  cert->add_option("--json", o.json_out);

  auto* ld = app.add_subcommand("latinon-density", "Pattern densities in a step Latinon");
  ld->add_option("--latinon", o.latinon, "uniform, prop41, prop42 or a JSON file")->required();
  auto* pattern_opt = ld->add_option("--pattern", o.pattern);
  auto* all_opt = ld->add_option("--all", o.all, "All k x l patterns")->expected(2);
  pattern_opt->excludes(all_opt);
  ld->add_option("--method", o.method)->check(CLI::IsMember({"exact", "rbmc"}))->default_val("exact");
  add_mc(ld);
  ld->add_option("--json", o.json_out);

  auto* lc = app.add_subcommand("latinon-check", "Verify the Latinon marginal identities");
  lc->add_option("--latinon", o.latinon)->required();
  lc->add_option("--json", o.json_out);

  auto* pats = app.add_subcommand("patterns", "List k x l patterns with their ids");
  pats->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  pats->add_option("--l", o.l)->required()->check(CLI::PositiveNumber);
  pats->add_option("--id", o.id, "Only the pattern with this id");
  pats->add_flag("--classify56", o.classify, "Mark 2x3 patterns with 5 and 6 in one column");
  pats->add_option("--json", o.json_out);

  auto* elim = app.add_subcommand("eliminable", "Decide eliminability of a generalized pattern");
  elim->add_option("--pattern", o.pattern)->required();
  elim->add_option("--latinon", o.latinon, "Also compute the exact density on this Latinon");
  elim->add_option("--json", o.json_out);

  auto* s72 = app.add_subcommand("suite72", "The 72 generalized 2x3 patterns");
  s72->add_option("--latinon", o.latinon, "Also compute exact densities on this Latinon");
  s72->add_option("--json", o.json_out);

  auto* sw = app.add_subcommand("sweep", "Convergence sweep over generated squares (CSV)");
  sw->add_option("--kinds", o.kinds, "Comma-separated square kinds")->required();
  sw->add_option("--orders", o.orders, "Comma-separated orders")->default_val("");
  sw->add_option("--seeds", o.seeds, "Comma-separated seeds")->default_val("0");
  sw->add_option("--targets", o.targets, "Comma-separated 2x3 pattern ids")->default_val("");
  sw->add_option("--method", o.method)->check(CLI::IsMember({"exact", "mc"}))->default_val("exact");
  sw->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  sw->add_option("-o,--output", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out;
    std::ostringstream cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (ld->parsed() && o.pattern.empty() && o.all.empty()) {
      err << "latinon-density: give --pattern or --all k l\n";
      return kExitInputError;
    }
    if (gen->parsed()) return cmd_gen(o, out);
    if (density->parsed()) return cmd_density(o, out);
    if (profile->parsed()) return cmd_profile(o, out);
    if (cert->parsed()) return cmd_certify(o, out);
    if (ld->parsed()) return cmd_latinon_density(o, out);
    if (lc->parsed()) return cmd_latinon_check(o, out);
    if (pats->parsed()) return cmd_patterns(o, out);
    if (elim->parsed()) return cmd_eliminable(o, out);
    if (s72->parsed()) return cmd_suite72(o, out);
    if (sw->parsed()) return cmd_sweep(o, out);
  } catch (const GenerationFailure& failure) {
    err << "error: generation failed: " << failure.message << '\n';
    return kExitGenerationFailure;
  } catch (const Error& e) {
    err << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitInputError;
}

}  // namespace latinpat
