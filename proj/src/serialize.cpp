#include "incidence/serialize.hpp"

#include <stdexcept>

namespace incidence {

const Json& require_member(const Json& j, std::string_view key) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object with member '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("missing member '" + std::string(key) + "'");
  return *it;
}

Json to_json(const Flat& f) {
  Json rows = Json::array();
  for (const auto& r : f.rows()) {
    Json row = Json::array();
    for (const auto& s : r) row.push_back(s.str());
    rows.push_back(std::move(row));
  }
  return Json{{"ring", f.ring().tag()}, {"rank", f.rank()}, {"rows", std::move(rows)}};
}

Flat flat_from_json(const Json& j, const Ring& ring) {
  try {
    const Ring stated = Ring::from_tag(require_member(j, "ring").get<std::string>());
    if (!(stated == ring)) {
      throw std::invalid_argument("flat over " + stated.tag() + " where " + ring.tag() + " was expected");
    }
    const int rank = require_member(j, "rank").get<int>();
    std::vector<Vec4> rows;
    for (const auto& row : require_member(j, "rows")) {
      if (!row.is_array() || row.size() != 4) throw std::invalid_argument("flat rows need four entries");
      rows.push_back({ring.parse(row[0].get<std::string>()), ring.parse(row[1].get<std::string>()),
                      ring.parse(row[2].get<std::string>()), ring.parse(row[3].get<std::string>())});
    }
    Flat f = Flat::span(rows);
    if (f.rank() != rank) throw std::invalid_argument("flat rows do not have the stated rank");
    return f;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed flat: ") + e.what());
  }
}

Json to_json(const Element& e) {
  if (const auto* f = std::get_if<Flat>(&e)) return to_json(*f);
  if (const auto* p = std::get_if<moulton::Point>(&e)) return Json{{"moulton_point", p->str()}};
  return Json{{"moulton_line", std::get<moulton::Line>(e).str()}};
}

Element element_from_json(const Json& j, const std::optional<Ring>& ring) {
  if (j.is_object() && j.contains("moulton_point")) return moulton::parse_point(j["moulton_point"].get<std::string>());
  if (j.is_object() && j.contains("moulton_line")) return moulton::parse_line(j["moulton_line"].get<std::string>());
  if (!ring) throw std::invalid_argument("a flat needs a coordinate model");
  return flat_from_json(j, *ring);
}

Json to_json(const Verdict& v) {
  Json witness = Json::object();
  for (const auto& [role, e] : v.witness) witness[role] = to_json(e);
  return Json{{"verdict", to_string(v.status)}, {"witness", std::move(witness)}, {"notes", v.notes}};
}

Json to_json(const Perspectivity& p) {
  return Json{{"center", to_json(p.center)}, {"source", to_json(p.source)}, {"target", to_json(p.target)}};
}

Json to_json(const PerspectivityChain& c) {
  Json links = Json::array();
  for (const auto& l : c.links) links.push_back(to_json(l));
  return Json{{"kind", "chain"}, {"links", std::move(links)}};
}

Json to_json(const AxialPerspectivity& a) {
  return Json{{"kind", "axial"}, {"axis", to_json(a.axis)}, {"source", to_json(a.source)}, {"target", to_json(a.target)}};
}

Json to_json(const Projectivity& p) {
  return std::visit([](const auto& m) { return to_json(m); }, p);
}

Perspectivity perspectivity_from_json(const Json& j, const Ring& ring) {
  return Perspectivity::make(flat_from_json(require_member(j, "center"), ring),
                             flat_from_json(require_member(j, "source"), ring),
                             flat_from_json(require_member(j, "target"), ring));
}

PerspectivityChain chain_from_json(const Json& j, const Ring& ring) {
  const Json& links = j.is_array() ? j : require_member(j, "links");
  if (!links.is_array()) throw std::invalid_argument("chain links must be an array");
  std::vector<Perspectivity> out;
  for (const auto& l : links) out.push_back(perspectivity_from_json(l, ring));
  return PerspectivityChain::make(std::move(out));
}

Json to_json(const CentralAxialCollineation& k) {
  return Json{{"center", to_json(k.center)}, {"axis", to_json(k.axis)}, {"A", to_json(k.A)}, {"A'", to_json(k.A2)}};
}

CentralAxialCollineation collineation_from_json(const Json& j, const Ring& ring) {
  return CentralAxialCollineation::make(
      flat_from_json(require_member(j, "center"), ring), flat_from_json(require_member(j, "axis"), ring),
      flat_from_json(require_member(j, "A"), ring), flat_from_json(require_member(j, "A'"), ring));
}

Json to_json(const AuditEntry& e) {
  return Json{{"axiom", e.axiom},
              {"status", to_string(e.status)},
              {"witness", e.witness},
              {"coverage", {{"exhaustive", e.coverage.exhaustive}, {"instances", e.coverage.instances}}},
              {"seed", e.seed},
              {"note", e.note}};
}

}  // namespace incidence
