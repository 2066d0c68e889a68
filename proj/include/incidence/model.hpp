#pragma once

/**
 * @file model.hpp
 * @brief A uniform handle on the incidence models the tool can audit.
 */

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "incidence/finite_geometry.hpp"
#include "incidence/moulton.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

/// PG(3,K) known only through coordinates; queried by sampling.
struct CoordinateSpace {
  Ring ring;
};

class IncidenceModel {
 public:
  using Variant = std::variant<CoordinateSpace, std::shared_ptr<const FiniteGeometry>, moulton::Plane>;

  static IncidenceModel coordinatized(const Ring& ring);
  /// PG(3,q) with every point, line and plane listed. Finite rings only.
  static IncidenceModel enumerated(const Ring& ring);
  static IncidenceModel moulton_plane();
  static IncidenceModel abstract(FiniteGeometry geometry, std::string tag);

  /// "gf:p", "rational", "quaternion", "moulton" or "file:PATH".
  const std::string& tag() const { return tag_; }
  const Variant& variant() const { return value_; }
  /// Ring of a coordinatized or enumerated model.
  const std::optional<Ring>& ring() const { return ring_; }

  const FiniteGeometry* finite() const;
  const CoordinateSpace* coordinates() const { return std::get_if<CoordinateSpace>(&value_); }
  bool is_moulton() const { return std::holds_alternative<moulton::Plane>(value_); }
  /// Plane models have no planes of their own: the Moulton plane and
  /// abstract files without a "planes:" section.
  bool is_plane_model() const;

 private:
  IncidenceModel(std::string tag, std::optional<Ring> ring, Variant value)
      : tag_(std::move(tag)), ring_(std::move(ring)), value_(std::move(value)) {}

  std::string tag_;
  std::optional<Ring> ring_;
  Variant value_;
};

/// Coordinatized PG(3,K). Throws std::invalid_argument when enumeration is
/// requested for an infinite ring.
IncidenceModel build_pg3(const Ring& ring, bool enumerate);

/// Model from a command-line spec: gf:p | rational | quaternion | moulton |
/// file:PATH. Finite fields are enumerated when `enumerate_finite` is set.
IncidenceModel model_from_spec(std::string_view spec, bool enumerate_finite = true,
                               std::size_t element_cap = FiniteGeometry::kDefaultElementCap);

/// The unique Moulton line through two distinct points.
inline moulton::Line moulton_line_through(const moulton::Point& p, const moulton::Point& q) {
  return moulton::line_through(p, q);
}

}  // namespace incidence
