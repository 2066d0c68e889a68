#include "incidence/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "incidence/audit.hpp"
#include "incidence/battery.hpp"
#include "incidence/model.hpp"
#include "incidence/projectivities.hpp"

namespace incidence {

namespace {

constexpr std::uint64_t kDefaultAuditBudget = 100000;
constexpr std::uint64_t kDefaultBatteryBudget = 100000;
constexpr std::uint64_t kDefaultBatteryTarget = 1000;
constexpr std::size_t kComparisonSamples = 100;

std::uint64_t pg3_points(std::uint64_t q) { return q * q * q + q * q + q + 1; }
std::uint64_t pg3_lines(std::uint64_t q) { return (q * q + 1) * (q * q + q + 1); }

/// Finite fields are enumerated while PG(3,q) stays under the element cap;
/// larger ones are handled through coordinates.
IncidenceModel load_model(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("--model is required for this command");
  if (spec == "moulton" || spec.starts_with("file:")) return model_from_spec(spec);
  const Ring ring = Ring::from_tag(spec);
  const bool enumerate =
      ring.is_finite() &&
      2 * pg3_points(ring.modulus()) + pg3_lines(ring.modulus()) <= FiniteGeometry::kDefaultElementCap;
  return build_pg3(ring, enumerate);
}

Json read_json_file(const std::string& path) {
  if (path.empty()) throw std::invalid_argument("an input file is required");
  std::ifstream in(path);
  if (!in || !std::filesystem::is_regular_file(path)) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Ring named by an input file, checked against --model when both are given.
Ring file_ring(const Json& doc, const RunConfig& config) {
  const std::string tag = require_member(doc, "model").get<std::string>();
  if (!config.model.empty() && config.model != tag) {
    throw std::invalid_argument("model mismatch: file declares " + tag + ", --model is " + config.model);
  }
  if (tag == "moulton" || tag.starts_with("file:")) {
    throw std::invalid_argument("model " + tag + " has no coordinates");
  }
  return Ring::from_tag(tag);
}

Json config_echo(const RunConfig& c, std::optional<std::uint64_t> budget) {
  Json j{{"model", c.model}, {"seed", c.seed}};
  j["budget"] = budget ? Json(*budget) : Json(nullptr);
  j["height"] = c.height;
  j["exhaustive"] = c.exhaustive;
  if (c.command == "audit") j["axioms"] = c.axioms;
  if (c.command == "battery") j["target"] = c.target.value_or(kDefaultBatteryTarget);
  if (!c.input.empty()) j["input"] = c.input;
  j["out"] = c.out;
  return j;
}

Json report_shell(const RunConfig& c, std::optional<std::uint64_t> budget) {
  return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", c.command}, {"config", config_echo(c, budget)}};
}

std::string verdict_word(bool ok) { return ok ? "ok" : "INCONSISTENT"; }

// ---- audit -------------------------------------------------------------------

std::vector<AxiomSet> requested_sets(const IncidenceModel& model, const std::string& list) {
  std::vector<AxiomSet> sets;
  if (list.empty()) {
    for (AxiomSet s : {AxiomSet::P, AxiomSet::S, AxiomSet::VY}) {
      if (applicable(model, s)) sets.push_back(s);
    }
  } else {
    std::stringstream ss(list);
    for (std::string name; std::getline(ss, name, ',');) {
      const AxiomSet s = parse_axiom_set(name);
      if (!applicable(model, s)) {
        throw std::invalid_argument("axiom set " + name + " does not apply to model " + model.tag());
      }
      if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
    }
  }
  if (applicable(model, AxiomSet::G) && std::find(sets.begin(), sets.end(), AxiomSet::G) == sets.end()) {
    sets.push_back(AxiomSet::G);
  }
  return sets;
}

Json audit_record(const IncidenceModel& model, const AuditEntry& e, const AuditOptions& opts) {
  return Json{{"kind", "audit"},
              {"model", model.tag()},
              {"enumerated", model.finite() != nullptr && model.ring().has_value()},
              {"axiom", e.axiom},
              {"status", to_string(e.status)},
              {"witness", e.witness},
              {"note", e.note},
              {"audit", {{"seed", opts.seed}, {"budget", opts.budget}, {"height", opts.height}}}};
}

}  // namespace

CommandResult cmd_audit(const RunConfig& config) {
  const IncidenceModel model = load_model(config.model);
  AuditOptions opts;
  opts.budget = config.budget.value_or(kDefaultAuditBudget);
  opts.seed = config.seed;
  opts.height = config.height;
  opts.exhaustive = config.exhaustive;

  const auto sets = requested_sets(model, config.axioms);
  Json set_reports = Json::array();
  Json records = Json::array();
  std::map<AxiomSet, bool> all_pass, any_fail;
  std::uint64_t passed = 0, failed = 0, skipped = 0, confirmed = 0;
  std::ostringstream text;
  text << "audit " << model.tag() << " (seed " << opts.seed << ", budget " << opts.budget << ")\n";

  if (!applicable(model, AxiomSet::S)) {
    set_reports.push_back(Json{{"set", "S"}, {"status", "skipped"}, {"reason", "plane model"}, {"entries", Json::array()}});
    text << "  S  skipped (plane model)\n";
  }
  for (AxiomSet set : sets) {
    Json entries = Json::array();
    bool pass = true, fail = false;
    for (const AuditEntry& e : audit(model, set, opts)) {
      entries.push_back(to_json(e));
      text << "  " << e.axiom << "  " << to_string(e.status) << "  "
           << (e.coverage.exhaustive ? "exhaustive" : "sampled") << " " << e.coverage.instances;
      if (!e.note.empty()) text << "  (" << e.note << ")";
      text << "\n";
      if (e.status == AuditStatus::skipped) ++skipped;
      if (e.passed()) ++passed;
      if (e.failed()) {
        ++failed;
        pass = false;
        fail = true;
        Json rec = audit_record(model, e, opts);
        const bool ok = recheck_audit_witness(model, e.axiom, e.witness, opts);
        confirmed += ok ? 1 : 0;
        rec["rechecked"] = ok;
        records.push_back(std::move(rec));
      }
    }
    all_pass[set] = pass;
    any_fail[set] = fail;
    set_reports.push_back(Json{{"set", to_string(set)}, {"status", "run"}, {"entries", std::move(entries)}});
  }

  const auto ran = [&](AxiomSet s) { return all_pass.count(s) > 0; };
  std::string classification = "unclassified";
  if (ran(AxiomSet::S) && ran(AxiomSet::G)) {
    if (all_pass[AxiomSet::S] && all_pass[AxiomSet::G]) classification = "projective 3-space";
    else if (all_pass[AxiomSet::S] && any_fail[AxiomSet::G]) classification = "space of incidence, non-Pappian";
    else if (!all_pass[AxiomSet::S]) classification = "not a space of incidence";
  } else if (ran(AxiomSet::P)) {
    classification = all_pass[AxiomSet::P] ? "projective plane" : "not a projective plane";
  }

  // Expected outcomes: fields give projective 3-spaces, the quaternions a
  // non-Pappian space, the Moulton plane a projective plane. Abstract files
  // carry no expectation.
  bool consistent = confirmed == failed;
  std::string expectation = "none (abstract model)";
  if (model.is_moulton()) {
    expectation = "projective plane";
  } else if (model.ring()) {
    expectation = model.ring()->is_commutative() ? "projective 3-space" : "space of incidence, non-Pappian";
  }
  if (model.is_moulton() || model.ring()) {
    const bool pappian = model.is_moulton() || model.ring()->is_commutative();
    for (AxiomSet set : sets) {
      consistent = consistent && (!pappian && set == AxiomSet::G ? any_fail[set] : all_pass[set]);
    }
  }

  Json report = report_shell(config, opts.budget);
  report["results"] = Json{{"sets", std::move(set_reports)}, {"records", std::move(records)}, {"classification", classification}};
  report["summary"] = Json{{"pass", passed},          {"fail", failed},         {"skipped", skipped},
                           {"witnesses_confirmed", confirmed}, {"classification", classification},
                           {"expected", expectation}, {"consistent", consistent}};
  text << "classification: " << classification << "  [" << verdict_word(consistent) << "]\n";
  return CommandResult{std::move(report), consistent ? kConsistent : kInconsistent, text.str()};
}

// ---- battery -----------------------------------------------------------------

CommandResult cmd_battery(const RunConfig& config) {
  const IncidenceModel model = load_model(config.model);
  const auto suites = suites_for(model);
  if (suites.empty()) throw std::invalid_argument("no theorem battery applies to model " + model.tag());
  BatteryOptions opts;
  opts.seed = config.seed;
  opts.target = config.target.value_or(kDefaultBatteryTarget);
  opts.max_trials = config.budget.value_or(kDefaultBatteryBudget);
  opts.height = config.height;

  Json results = Json::array();
  std::map<Suite, SuiteResult> by_suite;
  std::uint64_t failures = 0, confirmed = 0;
  std::ostringstream text;
  text << "battery " << model.tag() << " (seed " << opts.seed << ", target " << opts.target << ", budget "
       << opts.max_trials << ")\n";
  for (Suite s : suites) {
    SuiteResult r = run_suite(model, s, opts);
    Json j = to_json(r);
    j["target_reached"] = r.target_reached(opts);
    if (r.first_failure) {
      ++failures;
      const auto check = recheck_record(*r.first_failure);
      confirmed += check.match ? 1 : 0;
      j["first_failure_rechecked"] = check.match;
    }
    text << "  " << to_string(s) << ": " << r.admissible() << " admissible of " << r.trials << " trials, " << r.holds
         << " hold, " << r.fails << " fail, " << r.degenerate << " degenerate";
    if (s == Suite::transport) text << ", verdicts agree " << r.transport_agree << "/" << r.admissible();
    text << "\n";
    results.push_back(std::move(j));
    by_suite.emplace(s, std::move(r));
  }

  Json expectations = Json::array();
  auto expect = [&](std::string what, bool ok) {
    text << "  expect " << what << ": " << (ok ? "yes" : "NO") << "\n";
    expectations.push_back(Json{{"check", std::move(what)}, {"ok", ok}});
    return ok;
  };
  bool consistent = expect("every failure witness replays", confirmed == failures);
  for (const auto& [s, r] : by_suite) {
    consistent &= expect(std::string(to_string(s)) + " has no unexplained degeneracy",
                         r.degenerate_reasons.count("unexplained") == 0);
  }
  if (model.is_moulton()) {
    consistent &= expect("Desargues failure found", by_suite.at(Suite::moulton_desargues).first_failure.has_value());
  } else if (model.ring()->is_commutative()) {
    for (const auto& [s, r] : by_suite) consistent &= expect(std::string(to_string(s)) + " never fails", r.fails == 0);
  } else {
    consistent &= expect("planar Desargues never fails", by_suite.at(Suite::desargues_planar).fails == 0);
    consistent &= expect("spatial Desargues never fails", by_suite.at(Suite::desargues_spatial).fails == 0);
    const auto& pappus = by_suite.at(Suite::pappus).first_failure;
    consistent &= expect("Pappus failure found", pappus.has_value());
    consistent &= expect("Pappus failure lifts to a Gallucci failure",
                         pappus && pappus->contains("lifted") && (*pappus)["lifted"].value("verdict", "") == "fails");
  }
  if (by_suite.count(Suite::transport)) {
    consistent &= expect("transported verdicts agree", by_suite.at(Suite::transport).transport_disagree == 0);
  }

  Json report = report_shell(config, opts.max_trials);
  report["results"] = Json{{"suites", std::move(results)}, {"expectations", std::move(expectations)}};
  report["summary"] = Json{{"suites", suites.size()}, {"failure_witnesses", failures},
                           {"witnesses_confirmed", confirmed}, {"consistent", consistent}};
  text << "battery: [" << verdict_word(consistent) << "]\n";
  return CommandResult{std::move(report), consistent ? kConsistent : kInconsistent, text.str()};
}

// ---- reduce ------------------------------------------------------------------

CommandResult cmd_reduce(const RunConfig& config) {
  const Json doc = read_json_file(config.input);
  const Ring ring = file_ring(doc, config);
  const PerspectivityChain chain = chain_from_json(require_member(doc, "chain"), ring);

  Json report = report_shell(config, std::nullopt);
  std::ostringstream text;
  text << "reduce " << config.input << " over " << ring.tag() << ": " << chain.size() << " perspectivities\n";
  Projectivity reduced;
  try {
    reduced = reduce_chain(chain);
  } catch (const DegenerateConstruction& e) {
    report["results"] = Json{{"input_length", chain.size()}, {"error", e.what()}};
    report["summary"] = Json{{"reduced", false}, {"consistent", false}};
    text << "  no reduction: " << e.what() << "  [INCONSISTENT]\n";
    return CommandResult{std::move(report), kInconsistent, text.str()};
  }
  const auto points = comparison_points(chain.source(), config.seed, kComparisonSamples);
  const auto differ = first_disagreement(Projectivity(chain), reduced, points);
  const bool axial = std::holds_alternative<AxialPerspectivity>(reduced);
  const std::size_t length = axial ? 1 : std::get<PerspectivityChain>(reduced).size();
  const bool short_enough = axial || length <= 2;
  const bool consistent = !differ && short_enough;

  report["results"] = Json{{"input_length", chain.size()},
                           {"output_kind", axial ? "axial" : "chain"},
                           {"output_length", length},
                           {"reduced", to_json(reduced)},
                           {"pointwise_equal", !differ},
                           {"points_compared", points.size()},
                           {"first_disagreement", differ ? to_json(*differ) : Json(nullptr)}};
  report["summary"] = Json{{"reduced", true}, {"consistent", consistent}};
  text << "  reduced to " << (axial ? "an axial perspectivity" : std::to_string(length) + " perspectivities")
       << "; pointwise_equal: " << (!differ ? "true" : "false") << " on " << points.size() << " points  ["
       << verdict_word(consistent) << "]\n";
  return CommandResult{std::move(report), consistent ? kConsistent : kInconsistent, text.str()};
}

// ---- decompose ---------------------------------------------------------------

namespace {

Quadruple quadruple_from_json(const Json& j, const Ring& ring, const char* name) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument(std::string(name) + " must list four points");
  return {flat_from_json(j[0], ring), flat_from_json(j[1], ring), flat_from_json(j[2], ring),
          flat_from_json(j[3], ring)};
}

}  // namespace

CommandResult cmd_decompose(const RunConfig& config) {
  const Json doc = read_json_file(config.input);
  const Ring ring = file_ring(doc, config);
  const Quadruple from = quadruple_from_json(require_member(doc, "from"), ring, "from");
  const Quadruple to = quadruple_from_json(require_member(doc, "to"), ring, "to");

  const auto ks = decompose_four_points(from, to);
  Json collineations = Json::array();
  for (const auto& k : ks) collineations.push_back(to_json(k));
  Json images = Json::array();
  bool composite_ok = true;
  for (std::size_t i = 0; i < 4; ++i) {
    const Flat image = apply_all(ks, from[i]);
    composite_ok = composite_ok && image == to[i];
    images.push_back(to_json(image));
  }
  const bool consistent = composite_ok && ks.size() <= 4;

  Json report = report_shell(config, std::nullopt);
  report["results"] = Json{{"collineations", std::move(collineations)},
                           {"count", ks.size()},
                           {"images", std::move(images)},
                           {"composite_ok", composite_ok}};
  report["summary"] = Json{{"count", ks.size()}, {"consistent", consistent}};
  std::ostringstream text;
  text << "decompose " << config.input << " over " << ring.tag() << ": " << ks.size()
       << " central-axial collineations; composite_ok: " << (composite_ok ? "true" : "false") << "  ["
       << verdict_word(consistent) << "]\n";
  return CommandResult{std::move(report), consistent ? kConsistent : kInconsistent, text.str()};
}

// ---- recheck -----------------------------------------------------------------

namespace {

bool is_record(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) return false;
  return j["kind"] == "audit" || j.contains("inputs");
}

/// Witness records reachable from `j`; nested lifted records are rechecked
/// together with their parent.
void collect_records(const Json& j, const std::string& path, std::vector<std::pair<std::string, const Json*>>& out) {
  if (is_record(j)) {
    out.emplace_back(path, &j);
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) collect_records(v, path + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_records(j[i], path + "/" + std::to_string(i), out);
  }
}

}  // namespace

CommandResult cmd_recheck(const RunConfig& config) {
  const Json doc = read_json_file(config.input);
  std::vector<std::pair<std::string, const Json*>> found;
  collect_records(doc, "", found);
  if (found.empty()) throw std::invalid_argument("'" + config.input + "' holds no witness records");

  Json checks = Json::array();
  std::uint64_t matched = 0;
  std::ostringstream text;
  text << "recheck " << config.input << ": " << found.size() << " record(s)\n";
  for (const auto& [path, rec] : found) {
    const RecheckResult r = recheck_record(*rec);
    matched += r.match ? 1 : 0;
    checks.push_back(Json{{"path", path.empty() ? "/" : path}, {"kind", (*rec)["kind"]}, {"match", r.match},
                          {"detail", r.detail}});
    text << "  " << (path.empty() ? "/" : path) << " (" << (*rec)["kind"].get<std::string>() << "): "
         << (r.match ? "reproduced" : "MISMATCH: " + r.detail) << "\n";
  }
  const bool all_match = matched == found.size();
  Json report = report_shell(config, std::nullopt);
  report["results"] = Json{{"records", std::move(checks)}};
  report["summary"] = Json{{"records", found.size()}, {"matched", matched}, {"all_match", all_match}};
  return CommandResult{std::move(report), all_match ? kConsistent : kInconsistent, text.str()};
}

// ---- enumerate ---------------------------------------------------------------

CommandResult cmd_enumerate(const RunConfig& config) {
  const IncidenceModel model = load_model(config.model);
  const FiniteGeometry* g = model.finite();
  if (!g) throw std::invalid_argument("enumeration needs a finite model; " + model.tag() + " is not enumerable");
  Json results{{"points", g->num_points()}, {"lines", g->num_lines()}, {"planes", g->num_planes()}};
  bool consistent = true;
  std::ostringstream text;
  text << "enumerate " << model.tag() << ": " << g->num_points() << " points, " << g->num_lines() << " lines, "
       << g->num_planes() << " planes\n";
  if (model.ring()) {
    const std::uint64_t q = model.ring()->modulus();
    const Json expected{{"points", pg3_points(q)}, {"lines", pg3_lines(q)}, {"planes", pg3_points(q)}};
    consistent = g->num_points() == pg3_points(q) && g->num_lines() == pg3_lines(q) && g->num_planes() == pg3_points(q);
    results["expected"] = expected;
    results["matches_formula"] = consistent;
    text << "  counting formula: " << pg3_points(q) << " / " << pg3_lines(q) << " / " << pg3_points(q) << "  ["
         << verdict_word(consistent) << "]\n";
  }
  Json report = report_shell(config, std::nullopt);
  report["results"] = std::move(results);
  report["summary"] = Json{{"consistent", consistent}};
  return CommandResult{std::move(report), consistent ? kConsistent : kInconsistent, text.str()};
}

CommandResult run_command(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult r;
  if (config.command == "audit") r = cmd_audit(config);
  else if (config.command == "battery") r = cmd_battery(config);
  else if (config.command == "reduce") r = cmd_reduce(config);
  else if (config.command == "decompose") r = cmd_decompose(config);
  else if (config.command == "recheck") r = cmd_recheck(config);
  else if (config.command == "enumerate") r = cmd_enumerate(config);
  else throw std::invalid_argument("unknown command '" + config.command + "'");
  r.report["exit_code"] = r.exit_code;
  r.report["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checker for incidence axioms, configuration theorems and projectivities", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  RunConfig config;
  std::uint64_t budget = 0, target = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", config.model, "gf:p | rational | quaternion | moulton | file:PATH");
    sub->add_option("--seed", config.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--budget", budget, "trial or sample budget");
    sub->add_option("--height", config.height, "height bound of sampled coordinates")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));
    sub->add_option("--out", config.out, "write the JSON report here");
    sub->add_flag("--exhaustive", config.exhaustive, "audit finite models exhaustively");
    sub->add_flag("--json", config.json, "print the JSON report instead of the summary");
  };
  struct Sub {
    const char* name;
    const char* help;
    bool takes_file;
  };
  const Sub subs[] = {{"audit", "check the incidence axioms of a model", false},
                      {"battery", "run the configuration theorem suites", false},
                      {"reduce", "shorten a perspectivity chain read from FILE", true},
                      {"decompose", "write a four-point map from FILE as central-axial collineations", true},
                      {"recheck", "replay the witness records in FILE", true},
                      {"enumerate", "count the points, lines and planes of a finite model", false}};
  std::map<std::string, CLI::App*> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (s.takes_file) sub->add_option("file", config.input, "input JSON file")->required();
    handles[s.name] = sub;
  }
  handles["audit"]->add_option("--axioms", config.axioms, "comma-separated axiom sets (P,S,VY,G)");
  handles["battery"]->add_option("--target", target, "admissible configurations per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kConsistent;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kConsistent;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }
  for (const auto& [name, sub] : handles) {
    if (!sub->parsed()) continue;
    config.command = name;
    if (sub->count("--budget")) config.budget = budget;
    if (name == "battery" && sub->count("--target")) config.target = target;
  }

  CommandResult result;
  try {
    result = run_command(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  if (!config.out.empty()) {
    std::ofstream file(config.out);
    file << result.report.dump(2) << "\n";
    if (!file) {
      err << "error: cannot write '" << config.out << "'\n";
      return kUsageError;
    }
  }
  out << (config.json ? result.report.dump(2) + "\n" : result.summary);
  return result.exit_code;
}

}  // namespace incidence
