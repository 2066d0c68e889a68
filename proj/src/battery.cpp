#include "incidence/battery.hpp"

#include <array>
#include <type_traits>
#include <variant>
#include <stdexcept>

#include "incidence/generators.hpp"

namespace incidence {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 7> kSuiteNames{{
    {Suite::desargues_planar, "desargues_planar"},
    {Suite::desargues_spatial, "desargues_spatial"},
    {Suite::pappus, "pappus"},
    {Suite::brianchon, "brianchon"},
    {Suite::gallucci, "gallucci"},
    {Suite::transport, "transport"},
    {Suite::moulton_desargues, "moulton_desargues"},
}};

Stream stream_of(Suite s) {
  switch (s) {
    case Suite::desargues_planar: return Stream::desargues;
    case Suite::desargues_spatial: return Stream::desargues_spatial;
    case Suite::pappus: return Stream::pappus;
    case Suite::brianchon: return Stream::brianchon;
    case Suite::gallucci: return Stream::gallucci;
    case Suite::transport: return Stream::transport;
    case Suite::moulton_desargues: return Stream::moulton_desargues;
  }
  throw std::logic_error("unknown suite");
}

VerdictStatus parse_status(const std::string& s) {
  for (auto v : {VerdictStatus::holds, VerdictStatus::fails, VerdictStatus::degenerate}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

/// Verdict fields merged into a record.
void put_verdict(Json& record, const Verdict& v) {
  const Json j = to_json(v);
  for (const auto& [k, val] : j.items()) record[k] = val;
}

// ---- inputs <-> JSON ---------------------------------------------------------

template <class T, std::size_t N>
Json named_inputs(const std::array<const char*, N>& names, const std::array<const T*, N>& values) {
  Json j = Json::object();
  for (std::size_t i = 0; i < N; ++i) j[names[i]] = to_json(to_element(*values[i]));
  return j;
}

constexpr std::array<const char*, 7> kDesarguesRoles{"A", "B", "C", "A'", "B'", "C'", "S"};
constexpr std::array<const char*, 6> kPappusRoles{"A", "B", "C", "A'", "B'", "C'"};
constexpr std::array<const char*, 6> kBrianchonRoles{"a", "b", "c", "a'", "b'", "c'"};
constexpr std::array<const char*, 8> kGallucciRoles{"a", "b", "c", "e", "f", "g", "h", "d"};

template <class P>
Json to_json_inputs(const DesarguesInput<P>& in) {
  return named_inputs<P, 7>(kDesarguesRoles, {&in.A, &in.B, &in.C, &in.A2, &in.B2, &in.C2, &in.S});
}
Json to_json_inputs(const PappusInput<Flat>& in) {
  return named_inputs<Flat, 6>(kPappusRoles, {&in.A, &in.B, &in.C, &in.A2, &in.B2, &in.C2});
}
Json to_json_inputs(const BrianchonInput<Flat>& in) {
  return named_inputs<Flat, 6>(kBrianchonRoles, {&in.a, &in.b, &in.c, &in.a2, &in.b2, &in.c2});
}
Json to_json_inputs(const GallucciInput& in) {
  return named_inputs<Flat, 8>(kGallucciRoles, {&in.a, &in.b, &in.c, &in.e, &in.f, &in.g, &in.h, &in.d});
}
Json to_json_inputs(const std::array<std::array<Flat, 3>, 2>& t) {
  return named_inputs<Flat, 6>(kPappusRoles, {&t[0][0], &t[0][1], &t[0][2], &t[1][0], &t[1][1], &t[1][2]});
}

Flat input_flat(const Json& inputs, const char* role, const Ring& ring) {
  return flat_from_json(require_member(inputs, role), ring);
}

template <std::size_t N>
std::array<Flat, N> input_flats(const Json& inputs, const std::array<const char*, N>& roles, const Ring& ring) {
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<Flat, N>{input_flat(inputs, roles[I], ring)...};
  }(std::make_index_sequence<N>{});
}

moulton::Point input_moulton(const Json& inputs, const char* role) {
  const Json& j = require_member(inputs, role);
  return moulton::parse_point(require_member(j, "moulton_point").get<std::string>());
}

// ---- evaluation --------------------------------------------------------------

Json lifted_record(const std::string& model, const PappusInput<Flat>& in, const Flat& P, const Flat& Q) {
  Json lifted{{"kind", "gallucci"}, {"model", model}};
  lifted["lift"] = Json{{"P", to_json(P)}, {"Q", to_json(Q)}};
  try {
    const GallucciInput g = gallucci_from_pappus_config(in, P, Q);
    lifted["inputs"] = to_json_inputs(g);
    put_verdict(lifted, check_gallucci(g));
  } catch (const DegenerateConstruction& e) {
    put_verdict(lifted, Verdict::degenerate_because(std::string("lift: ") + e.what()));
  }
  return lifted;
}

Json converse_verdict(const PappusInput<Flat>& in, const Flat& P, const Flat& Q) {
  try {
    return to_json(pappus_from_gallucci_config(in, P, Q));
  } catch (const DegenerateConstruction& e) {
    return to_json(Verdict::degenerate_because(std::string("converse: ") + e.what()));
  }
}

using Inputs = std::variant<DesarguesInput<moulton::Point>, DesarguesInput<Flat>, std::array<std::array<Flat, 3>, 2>,
                            PappusInput<Flat>, BrianchonInput<Flat>, GallucciInput, TransportSample>;

Json inputs_json(const Inputs& inputs) {
  return std::visit(
      [](const auto& in) -> Json {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, TransportSample>) {
          Json j = to_json_inputs(in.pappus);
          j["P"] = to_json(in.P);
          j["Q"] = to_json(in.Q);
          return j;
        } else {
          return to_json_inputs(in);
        }
      },
      inputs);
}

Inputs parse_inputs(const Json& inputs, Suite suite, const IncidenceModel& model) {
  if (suite == Suite::moulton_desargues) {
    return DesarguesInput<moulton::Point>{input_moulton(inputs, "A"),  input_moulton(inputs, "B"),
                                          input_moulton(inputs, "C"),  input_moulton(inputs, "A'"),
                                          input_moulton(inputs, "B'"), input_moulton(inputs, "C'"),
                                          input_moulton(inputs, "S")};
  }
  const Ring ring = *model.ring();
  switch (suite) {
    case Suite::desargues_planar: {
      const auto f = input_flats(inputs, kDesarguesRoles, ring);
      return DesarguesInput<Flat>{f[0], f[1], f[2], f[3], f[4], f[5], f[6]};
    }
    case Suite::desargues_spatial: {
      const auto f = input_flats(inputs, kPappusRoles, ring);
      return std::array<std::array<Flat, 3>, 2>{{{f[0], f[1], f[2]}, {f[3], f[4], f[5]}}};
    }
    case Suite::brianchon: {
      const auto f = input_flats(inputs, kBrianchonRoles, ring);
      return BrianchonInput<Flat>{f[0], f[1], f[2], f[3], f[4], f[5]};
    }
    case Suite::gallucci: {
      const auto f = input_flats(inputs, kGallucciRoles, ring);
      return GallucciInput{f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7]};
    }
    case Suite::pappus:
    case Suite::transport: {
      const auto f = input_flats(inputs, kPappusRoles, ring);
      const PappusInput<Flat> in{f[0], f[1], f[2], f[3], f[4], f[5]};
      if (suite == Suite::pappus) return in;
      return TransportSample{in, input_flat(inputs, "P", ring), input_flat(inputs, "Q", ring)};
    }
    case Suite::moulton_desargues: break;
  }
  throw std::logic_error("unreachable");
}

/// Lift points of a failing Pappus trial: freshly drawn from `lift_rng`,
/// or read back from the stored "lifted" member during a recheck.
struct LiftSource {
  Rng* rng = nullptr;
  int height = 0;
  const Json* stored = nullptr;
};

/// Adds the verdict fields (and lifted parts) to a record.
void evaluate_into(Json& record, const Inputs& inputs, const std::string& tag, const LiftSource& lift_source) {
  std::visit(
      [&](const auto& in) {
        using T = std::decay_t<decltype(in)>;
        if constexpr (std::is_same_v<T, DesarguesInput<moulton::Point>>) {
          put_verdict(record, check_desargues_planar(moulton::Plane{}, in));
        } else if constexpr (std::is_same_v<T, DesarguesInput<Flat>>) {
          put_verdict(record, check_desargues_planar(CoordinatePlane(standard_plane(in.A.ring())), in));
        } else if constexpr (std::is_same_v<T, std::array<std::array<Flat, 3>, 2>>) {
          put_verdict(record, check_desargues_spatial(in[0], in[1]));
        } else if constexpr (std::is_same_v<T, BrianchonInput<Flat>>) {
          put_verdict(record, check_pappus_brianchon(CoordinatePlane(standard_plane(in.a.ring())), in));
        } else if constexpr (std::is_same_v<T, GallucciInput>) {
          put_verdict(record, check_gallucci(in));
        } else if constexpr (std::is_same_v<T, TransportSample>) {
          const Verdict v = check_pappus(CoordinatePlane(standard_plane(in.P.ring())), in.pappus);
          put_verdict(record, v);
          if (v.degenerate()) return;
          record["lifted"] = lifted_record(tag, in.pappus, in.P, in.Q);
          record["converse"] = converse_verdict(in.pappus, in.P, in.Q);
        } else {
          const Ring ring = in.A.ring();
          const Verdict v = check_pappus(CoordinatePlane(standard_plane(ring)), in);
          put_verdict(record, v);
          if (!v.fails()) return;
          if (lift_source.rng) {
            auto s = sample_lift(in, *lift_source.rng, lift_source.height);
            if (!s.value) {
              record["lifted"] = Json{{"rejected", s.rejected}};
            } else {
              record["lifted"] = lifted_record(tag, in, s.value->first, s.value->second);
            }
          } else if (lift_source.stored) {
            if (lift_source.stored->contains("rejected")) {
              record["lifted"] = *lift_source.stored;
              return;
            }
            const Json& pq = require_member(*lift_source.stored, "lift");
            record["lifted"] = lifted_record(tag, in, flat_from_json(require_member(pq, "P"), ring),
                                             flat_from_json(require_member(pq, "Q"), ring));
          }
        }
      },
      inputs);
}

struct Draw {
  std::optional<Json> record;
  std::string rejected;
};

template <class T>
std::variant<Inputs, std::string> sampled(Sample<T>&& s) {
  if (!s.value) return std::move(s.rejected);
  return Inputs(std::move(*s.value));
}

Draw draw(const IncidenceModel& model, Suite suite, std::uint64_t seed, std::uint64_t trial, int height) {
  Rng rng = trial_rng(seed, trial, stream_of(suite));
  const auto sample = [&]() -> std::variant<Inputs, std::string> {
    if (suite == Suite::moulton_desargues) return sampled(sample_moulton_desargues(rng, height));
    const Ring ring = *model.ring();
    switch (suite) {
      case Suite::desargues_planar: return sampled(sample_desargues(ring, rng, height));
      case Suite::desargues_spatial: return sampled(sample_desargues_spatial(ring, rng, height));
      case Suite::pappus: return sampled(sample_pappus(ring, rng, height));
      case Suite::brianchon: return sampled(sample_brianchon(ring, rng, height));
      case Suite::gallucci: return sampled(sample_gallucci(ring, rng, height));
      case Suite::transport: return sampled(sample_transport(ring, rng, height));
      case Suite::moulton_desargues: break;
    }
    throw std::logic_error("unreachable");
  }();
  if (const auto* why = std::get_if<std::string>(&sample)) return Draw{std::nullopt, *why};
  const Inputs& inputs = std::get<Inputs>(sample);
  Json record{{"kind", to_string(suite)}, {"model", model.tag()}, {"seed", seed}, {"trial", trial},
              {"height", height}, {"inputs", inputs_json(inputs)}};
  evaluate_into(record, inputs, model.tag(), LiftSource{&rng, height, nullptr});
  return Draw{std::move(record), {}};
}

void require_applicable(const IncidenceModel& model, Suite suite) {
  const bool moulton = suite == Suite::moulton_desargues;
  if (moulton != model.is_moulton() || (!moulton && !model.ring())) {
    throw std::invalid_argument("suite " + std::string(to_string(suite)) + " does not apply to model " + model.tag());
  }
}

/// Status of a transport record: degenerate when any of its three verdicts is.
std::pair<VerdictStatus, std::string> record_status(const Json& record) {
  const auto status = parse_status(record["verdict"].get<std::string>());
  if (status == VerdictStatus::degenerate || !record.contains("converse")) {
    return {status, record["notes"].get<std::string>()};
  }
  for (const char* part : {"lifted", "converse"}) {
    const Json& p = record[part];
    if (p["verdict"] == "degenerate") return {VerdictStatus::degenerate, p["notes"].get<std::string>()};
  }
  return {status, {}};
}

}  // namespace

std::string_view to_string(Suite s) {
  for (const auto& [suite, name] : kSuiteNames) {
    if (suite == s) return name;
  }
  throw std::logic_error("unknown suite");
}

Suite parse_suite(std::string_view name) {
  for (const auto& [suite, n] : kSuiteNames) {
    if (n == name) return suite;
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::vector<Suite> suites_for(const IncidenceModel& model) {
  if (model.is_moulton()) return {Suite::moulton_desargues};
  if (!model.ring()) return {};
  return {Suite::desargues_planar, Suite::desargues_spatial, Suite::pappus,
          Suite::brianchon,        Suite::gallucci,          Suite::transport};
}

std::optional<Json> trial_record(const IncidenceModel& model, Suite suite, std::uint64_t seed, std::uint64_t trial,
                                 int height) {
  require_applicable(model, suite);
  return draw(model, suite, seed, trial, height).record;
}

SuiteResult run_suite(const IncidenceModel& model, Suite suite, const BatteryOptions& options) {
  require_applicable(model, suite);
  SuiteResult r;
  r.suite = suite;
  r.model = model.tag();
  r.seed = options.seed;
  r.height = options.height;
  constexpr std::uint64_t kBlock = 256;
  for (std::uint64_t start = 0; start < options.max_trials && !r.target_reached(options); start += kBlock) {
    const std::uint64_t n = std::min(kBlock, options.max_trials - start);
    auto draws = map_indices<Draw>(options.exec, n, [&](std::uint64_t i) {
      return draw(model, suite, options.seed, start + i, options.height);
    });
    for (auto& d : draws) {
      if (r.target_reached(options)) break;
      ++r.trials;
      if (!d.record) {
        ++r.rejected[d.rejected];
        continue;
      }
      const auto [status, why] = record_status(*d.record);
      if (status == VerdictStatus::degenerate) {
        ++r.degenerate;
        ++r.degenerate_reasons[why.empty() ? "unexplained" : why];
        if (!r.first_degenerate) r.first_degenerate = std::move(*d.record);
        continue;
      }
      if (status == VerdictStatus::holds) ++r.holds;
      if (status == VerdictStatus::fails) ++r.fails;
      if (suite == Suite::transport) {
        const std::string p = (*d.record)["verdict"];
        const std::string g = (*d.record)["lifted"]["verdict"];
        const std::string c = (*d.record)["converse"]["verdict"];
        ++r.lift_matrix[p + "/" + g];
        ++r.converse_matrix[p + "/" + c];
        if (p == g && p == c) {
          ++r.transport_agree;
        } else {
          ++r.transport_disagree;
          if (!r.first_failure) r.first_failure = *d.record;
        }
        if (status == VerdictStatus::fails && !r.first_failure) r.first_failure = std::move(*d.record);
      } else if (status == VerdictStatus::fails && !r.first_failure) {
        r.first_failure = std::move(*d.record);
      }
    }
  }
  return r;
}

Json to_json(const SuiteResult& r) {
  Json j{{"suite", to_string(r.suite)}, {"model", r.model},   {"seed", r.seed},
         {"height", r.height},          {"trials", r.trials}, {"admissible", r.admissible()},
         {"holds", r.holds},            {"fails", r.fails},   {"degenerate", r.degenerate}};
  j["rejected"] = r.rejected;
  j["degenerate_reasons"] = r.degenerate_reasons;
  if (r.suite == Suite::transport) {
    j["agree"] = r.transport_agree;
    j["disagree"] = r.transport_disagree;
    j["lift_matrix"] = r.lift_matrix;
    j["converse_matrix"] = r.converse_matrix;
  }
  j["first_failure"] = r.first_failure ? *r.first_failure : Json(nullptr);
  j["first_degenerate"] = r.first_degenerate ? *r.first_degenerate : Json(nullptr);
  return j;
}

// ---- recheck -----------------------------------------------------------------

namespace {

RecheckResult mismatch(std::string detail) { return RecheckResult{false, std::move(detail)}; }

RecheckResult compare(const Json& stored, const Json& fresh, const std::string& where) {
  for (const char* key : {"inputs", "verdict", "witness", "notes", "lifted", "converse"}) {
    const bool a = stored.contains(key);
    const bool b = fresh.contains(key);
    if (a != b) return mismatch(where + key + ": present in only one of stored and recomputed record");
    if (a && stored[key] != fresh[key]) return mismatch(where + key + ": stored value differs from recomputation");
  }
  return RecheckResult{true, {}};
}

RecheckResult recheck_audit(const Json& record) {
  const std::string tag = require_member(record, "model").get<std::string>();
  const bool enumerated = record.value("enumerated", false);
  const IncidenceModel model = model_from_spec(tag, enumerated);
  const Json& cfg = require_member(record, "audit");
  AuditOptions opts;
  opts.seed = require_member(cfg, "seed").get<std::uint64_t>();
  opts.budget = require_member(cfg, "budget").get<std::uint64_t>();
  opts.height = require_member(cfg, "height").get<int>();
  const auto witness = require_member(record, "witness").get<std::vector<std::string>>();
  const auto axiom = require_member(record, "axiom").get<std::string>();
  if (recheck_audit_witness(model, axiom, witness, opts)) return RecheckResult{true, {}};
  return mismatch("audit witness for " + axiom + " does not reproduce a violation");
}

}  // namespace

RecheckResult recheck_record(const Json& record) {
  try {
    const std::string kind = require_member(record, "kind").get<std::string>();
    if (kind == "audit") return recheck_audit(record);
    const Suite suite = parse_suite(kind);
    const IncidenceModel model = model_from_spec(require_member(record, "model").get<std::string>(), false);
    require_applicable(model, suite);

    const Json& inputs = require_member(record, "inputs");
    Json fresh{{"kind", kind}, {"model", model.tag()}, {"inputs", inputs}};
    const Json* stored_lift = record.contains("lifted") ? &record["lifted"] : nullptr;
    evaluate_into(fresh, parse_inputs(inputs, suite, model), model.tag(), LiftSource{nullptr, 0, stored_lift});
    if (auto r = compare(record, fresh, ""); !r.match) return r;
    if (record.contains("lifted") && record["lifted"].contains("kind")) {
      if (auto r = recheck_record(record["lifted"]); !r.match) return mismatch("lifted." + r.detail);
    }

    if (record.contains("seed") && record.contains("trial")) {
      const auto seed = record["seed"].get<std::uint64_t>();
      const auto trial = record["trial"].get<std::uint64_t>();
      const int height = require_member(record, "height").get<int>();
      const auto redrawn = trial_record(model, suite, seed, trial, height);
      if (!redrawn) return mismatch("seed/trial: the sampler rejects this trial");
      if (auto r = compare(record, *redrawn, "redrawn "); !r.match) return r;
    }
    return RecheckResult{true, {}};
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
}

}  // namespace incidence
