#pragma once

/**
 * @file finite_geometry.hpp
 * @brief Finite incidence structures given by point sets.
 *
 * Lines and planes are stored as bitsets over the point indices, with the
 * reverse point -> line / point -> plane index kept alongside. Line-plane
 * incidence is containment of point sets.
 */

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "incidence/scalar.hpp"

namespace incidence {

using PointSet = boost::dynamic_bitset<>;

struct NamedSet {
  std::string id;
  std::vector<std::size_t> members;
};

class FiniteGeometry {
 public:
  static constexpr std::size_t kDefaultElementCap = 100000;

  /// Validates ids (unique across all sections), member indices, and that
  /// no element repeats a member. Throws std::invalid_argument.
  FiniteGeometry(std::vector<std::string> point_ids, std::vector<NamedSet> lines, std::vector<NamedSet> planes,
                 std::size_t element_cap = kDefaultElementCap);

  std::size_t num_points() const { return point_ids_.size(); }
  std::size_t num_lines() const { return lines_.size(); }
  std::size_t num_planes() const { return planes_.size(); }
  bool has_planes() const { return !planes_.empty(); }

  const std::string& point_id(std::size_t p) const { return point_ids_[p]; }
  const std::string& line_id(std::size_t l) const { return line_ids_[l]; }
  const std::string& plane_id(std::size_t a) const { return plane_ids_[a]; }

  const PointSet& line(std::size_t l) const { return lines_[l]; }
  const PointSet& plane(std::size_t a) const { return planes_[a]; }
  const std::vector<std::size_t>& line_points(std::size_t l) const { return line_points_[l]; }
  const std::vector<std::size_t>& plane_points(std::size_t a) const { return plane_points_[a]; }
  const std::vector<std::size_t>& lines_through(std::size_t p) const { return lines_through_[p]; }
  const std::vector<std::size_t>& planes_through(std::size_t p) const { return planes_through_[p]; }

  bool on_line(std::size_t p, std::size_t l) const { return lines_[l].test(p); }
  bool on_plane(std::size_t p, std::size_t a) const { return planes_[a].test(p); }
  bool line_in_plane(std::size_t l, std::size_t a) const { return lines_[l].is_subset_of(planes_[a]); }

  /// Some line contains every listed point.
  bool collinear(std::initializer_list<std::size_t> points) const;
  /// Some plane contains every listed point.
  bool coplanar(std::initializer_list<std::size_t> points) const;
  bool lines_meet(std::size_t l, std::size_t m) const { return lines_[l].intersects(lines_[m]); }
  /// No plane contains both lines.
  bool lines_skew(std::size_t l, std::size_t m) const;

 private:
  std::vector<std::string> point_ids_, line_ids_, plane_ids_;
  std::vector<PointSet> lines_, planes_;
  std::vector<std::vector<std::size_t>> line_points_, plane_points_, lines_through_, planes_through_;
};

/// PG(3,q) enumerated from coordinates over GF(q). Point ids are the
/// canonical coordinate strings.
FiniteGeometry enumerate_pg3(const Ring& field);

/// Line-oriented text format with sections "points:", "lines:", "planes:".
/// Each entry is "id: member member ..." ("id" alone in the points section).
/// '#' starts a comment.
FiniteGeometry parse_abstract_model(const std::string& text,
                                    std::size_t element_cap = FiniteGeometry::kDefaultElementCap);
FiniteGeometry load_abstract_model(const std::filesystem::path& path,
                                   std::size_t element_cap = FiniteGeometry::kDefaultElementCap);

}  // namespace incidence
