#pragma once

/**
 * @file serialize.hpp
 * @brief JSON forms of flats, elements, verdicts, projectivities and
 *        collineations.
 *
 * A flat is written as {"ring", "rank", "rows"} with canonical scalar
 * strings, so reading it back reproduces the flat exactly. Moulton
 * elements are written as {"moulton_point": str} or {"moulton_line": str}.
 * Every reader throws std::invalid_argument on malformed input.
 */

#include <json.hpp>

#include "incidence/audit.hpp"
#include "incidence/configurations.hpp"
#include "incidence/projectivities.hpp"

namespace incidence {

using Json = nlohmann::ordered_json;

Json to_json(const Flat& f);
/// Reads a flat and checks that it belongs to `ring` and has the stated rank.
Flat flat_from_json(const Json& j, const Ring& ring);

Json to_json(const Element& e);
/// Flats need `ring`; Moulton elements ignore it.
Element element_from_json(const Json& j, const std::optional<Ring>& ring);

Json to_json(const Verdict& v);

Json to_json(const Perspectivity& p);
Json to_json(const PerspectivityChain& c);
Json to_json(const AxialPerspectivity& a);
Json to_json(const Projectivity& p);
Perspectivity perspectivity_from_json(const Json& j, const Ring& ring);
PerspectivityChain chain_from_json(const Json& j, const Ring& ring);

Json to_json(const CentralAxialCollineation& k);
CentralAxialCollineation collineation_from_json(const Json& j, const Ring& ring);

Json to_json(const AuditEntry& e);

/// Member lookup that reports the missing key.
const Json& require_member(const Json& j, std::string_view key);

}  // namespace incidence
