#include "incidence/model.hpp"

#include <stdexcept>

namespace incidence {

IncidenceModel IncidenceModel::coordinatized(const Ring& ring) {
  return IncidenceModel(ring.tag(), ring, CoordinateSpace{ring});
}

IncidenceModel IncidenceModel::enumerated(const Ring& ring) {
  return IncidenceModel(ring.tag(), ring, std::make_shared<const FiniteGeometry>(enumerate_pg3(ring)));
}

IncidenceModel IncidenceModel::moulton_plane() { return IncidenceModel("moulton", std::nullopt, moulton::Plane{}); }

IncidenceModel IncidenceModel::abstract(FiniteGeometry geometry, std::string tag) {
  return IncidenceModel(std::move(tag), std::nullopt, std::make_shared<const FiniteGeometry>(std::move(geometry)));
}

const FiniteGeometry* IncidenceModel::finite() const {
  const auto* p = std::get_if<std::shared_ptr<const FiniteGeometry>>(&value_);
  return p ? p->get() : nullptr;
}

bool IncidenceModel::is_plane_model() const {
  if (is_moulton()) return true;
  const auto* g = finite();
  return g && !g->has_planes();
}

IncidenceModel build_pg3(const Ring& ring, bool enumerate) {
  if (!enumerate) return IncidenceModel::coordinatized(ring);
  if (!ring.is_finite()) throw std::invalid_argument("cannot enumerate PG(3) over the infinite ring " + ring.tag());
  return IncidenceModel::enumerated(ring);
}

IncidenceModel model_from_spec(std::string_view spec, bool enumerate_finite, std::size_t element_cap) {
  if (spec == "moulton") return IncidenceModel::moulton_plane();
  if (spec.starts_with("file:")) {
    const std::string path(spec.substr(5));
    return IncidenceModel::abstract(load_abstract_model(path, element_cap), std::string(spec));
  }
  const Ring ring = Ring::from_tag(spec);
  return build_pg3(ring, enumerate_finite && ring.is_finite());
}

}  // namespace incidence
