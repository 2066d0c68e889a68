#pragma once

/**
 * @file configurations.hpp
 * @brief Constructive verifiers for the configuration theorems.
 *
 * Planar verifiers are templates over a PlaneGeometry so that the same code
 * runs on coordinatized planes and on the Moulton plane. Violated genericity
 * assumptions give a degenerate verdict naming the broken condition;
 * malformed arguments (wrong rank, wrong ring, points off the plane) throw.
 */

#include <array>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "incidence/flat.hpp"
#include "incidence/moulton.hpp"

namespace incidence {

using Element = std::variant<Flat, moulton::Point, moulton::Line>;

std::string element_str(const Element& e);

enum class VerdictStatus { holds, fails, degenerate };

std::string_view to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::degenerate;
  /// Role-tagged elements: the axis or center on success, the offending
  /// elements on failure.
  std::vector<std::pair<std::string, Element>> witness;
  std::string notes;

  bool holds() const { return status == VerdictStatus::holds; }
  bool fails() const { return status == VerdictStatus::fails; }
  bool degenerate() const { return status == VerdictStatus::degenerate; }
  /// Witness element by role; throws std::out_of_range when absent.
  const Element& at(std::string_view role) const;

  static Verdict degenerate_because(std::string why) {
    return Verdict{VerdictStatus::degenerate, {}, std::move(why)};
  }
};

/// Thrown by constructions whose auxiliary choices are degenerate.
class DegenerateConstruction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- plane geometries -------------------------------------------------------

template <class G>
concept PlaneGeometry = requires(const G& g, const typename G::Point& p, const typename G::Line& l) {
  { g.join(p, p) } -> std::same_as<typename G::Line>;
  { g.meet(l, l) } -> std::same_as<typename G::Point>;
  { g.on(p, l) } -> std::same_as<bool>;
  { p == p } -> std::convertible_to<bool>;
  { l == l } -> std::convertible_to<bool>;
};

/// The plane {x4 = 0} of PG(3,K).
Flat standard_plane(const Ring& ring);
/// Point (x, y, z, 0) of the standard plane.
Flat plane_point(const Scalar& x, const Scalar& y, const Scalar& z);

/// A plane of PG(3,K) viewed as a projective plane.
class CoordinatePlane {
 public:
  using Point = Flat;
  using Line = Flat;

  explicit CoordinatePlane(Flat plane);

  const Flat& plane() const { return plane_; }
  Flat join(const Flat& p, const Flat& q) const;
  Flat meet(const Flat& l, const Flat& m) const;
  bool on(const Flat& p, const Flat& l) const { return incident(p, l); }
  /// Throws std::invalid_argument unless `f` is a point or line of the plane.
  void require_point(const Flat& f) const;
  void require_line(const Flat& f) const;

 private:
  Flat plane_;
};

/// Point-line duality of the standard plane (commutative rings only).
Flat planar_dual(const Flat& f);

inline Element to_element(const Flat& f) { return f; }
inline Element to_element(const moulton::Point& p) { return p; }
inline Element to_element(const moulton::Line& l) { return l; }

// ---- transversals -----------------------------------------------------------

/// The line through `p` meeting both skew lines `a` and `b`.
Flat transversal_from_point(const Flat& a, const Flat& b, const Flat& p);

/// Common transversals of three pairwise skew lines, one through each point
/// of `a`: all q+1 of them over GF(q), the first `limit` of a deterministic
/// sweep otherwise.
std::vector<Flat> transversals_of_three_skew(const Flat& a, const Flat& b, const Flat& c, std::size_t limit);

// ---- Desargues --------------------------------------------------------------

template <class P>
struct DesarguesInput {
  P A, B, C, A2, B2, C2, S;
};

/// Names the first violated precondition, if any.
template <PlaneGeometry G>
std::optional<std::string> desargues_defect(const G& g, const DesarguesInput<typename G::Point>& in) {
  const auto& [A, B, C, A2, B2, C2, S] = in;
  if (A == A2 || B == B2 || C == C2) return "corresponding vertices coincide";
  for (const auto* v : {&A, &B, &C, &A2, &B2, &C2}) {
    if (*v == S) return "center coincides with a vertex";
  }
  if (A == B || A == C || B == C || A2 == B2 || A2 == C2 || B2 == C2) return "triangle has repeated vertices";
  if (g.on(C, g.join(A, B))) return "first triangle is collinear";
  if (g.on(C2, g.join(A2, B2))) return "second triangle is collinear";
  if (!g.on(S, g.join(A, A2)) || !g.on(S, g.join(B, B2)) || !g.on(S, g.join(C, C2))) {
    return "connectors are not concurrent at the center";
  }
  if (g.join(A, B) == g.join(A2, B2) || g.join(A, C) == g.join(A2, C2) || g.join(B, C) == g.join(B2, C2)) {
    return "corresponding sides coincide";
  }
  return std::nullopt;
}

/// Triangles in perspective from S: holds iff the three side intersections
/// X = AB.A'B', Y = AC.A'C', Z = BC.B'C' are collinear.
template <PlaneGeometry G>
Verdict check_desargues_planar(const G& g, const DesarguesInput<typename G::Point>& in) {
  if (auto defect = desargues_defect(g, in)) return Verdict::degenerate_because(*defect);
  const auto X = g.meet(g.join(in.A, in.B), g.join(in.A2, in.B2));
  const auto Y = g.meet(g.join(in.A, in.C), g.join(in.A2, in.C2));
  const auto Z = g.meet(g.join(in.B, in.C), g.join(in.B2, in.C2));
  if (X == Y) return Verdict::degenerate_because("side intersections X and Y coincide");
  const auto axis = g.join(X, Y);
  Verdict v;
  v.witness = {{"X", to_element(X)}, {"Y", to_element(Y)}, {"Z", to_element(Z)}};
  if (g.on(Z, axis)) {
    v.status = VerdictStatus::holds;
    v.witness.emplace_back("axis", to_element(axis));
  } else {
    v.status = VerdictStatus::fails;
    v.notes = "X, Y, Z are not collinear";
  }
  return v;
}

Verdict check_desargues_planar(const CoordinatePlane& g, const DesarguesInput<Flat>& in);

/// Reproduces the planar verdict through the spatial construction: a line l
/// through S leaving the plane (through `off_plane`), a point D of the plane
/// (l, CC'), and the planes ABE, A'B'E'. Holds iff the side intersections lie
/// on the line where the plane (D, s') meets the base plane.
Verdict desargues_via_lift(const CoordinatePlane& g, const DesarguesInput<Flat>& in, const Flat& off_plane);

/// Two non-coplanar triangles. Holds when the corresponding sides meet and
/// the connectors are concurrent (witness: center O). Fails when the
/// triangles are not in perspective (witness: a skew side pair, notes
/// "not in perspective") or when exactly one of the two equivalent
/// conditions holds (notes "equivalence violated").
Verdict check_desargues_spatial(const std::array<Flat, 3>& first, const std::array<Flat, 3>& second);

// ---- Pappus -----------------------------------------------------------------

template <class P>
struct PappusInput {
  P A, B, C, A2, B2, C2;
};

template <PlaneGeometry G>
std::optional<std::string> pappus_defect(const G& g, const PappusInput<typename G::Point>& in) {
  const auto& [A, B, C, A2, B2, C2] = in;
  const std::array<const typename G::Point*, 6> pts{&A, &B, &C, &A2, &B2, &C2};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (*pts[i] == *pts[j]) return "points are not distinct";
    }
  }
  const auto l1 = g.join(A, B);
  const auto l2 = g.join(A2, B2);
  if (!g.on(C, l1)) return "A, B, C are not collinear";
  if (!g.on(C2, l2)) return "A', B', C' are not collinear";
  if (l1 == l2) return "the two ranges share their line";
  for (const auto* p : pts) {
    if (g.on(*p, l1) && g.on(*p, l2)) return "a point lies on both lines";
  }
  return std::nullopt;
}

/// Holds iff X = AB'.A'B, Y = AC'.A'C, Z = BC'.B'C are collinear.
template <PlaneGeometry G>
Verdict check_pappus(const G& g, const PappusInput<typename G::Point>& in) {
  if (auto defect = pappus_defect(g, in)) return Verdict::degenerate_because(*defect);
  const auto X = g.meet(g.join(in.A, in.B2), g.join(in.A2, in.B));
  const auto Y = g.meet(g.join(in.A, in.C2), g.join(in.A2, in.C));
  const auto Z = g.meet(g.join(in.B, in.C2), g.join(in.B2, in.C));
  Verdict v;
  v.witness = {{"X", to_element(X)}, {"Y", to_element(Y)}, {"Z", to_element(Z)}};
  if (X == Y && Y == Z) {
    v.status = VerdictStatus::holds;
    v.notes = "X, Y, Z coincide";
    return v;
  }
  const auto axis = X == Y ? g.join(X, Z) : g.join(X, Y);
  if (g.on(Z, axis) && g.on(X, axis)) {
    v.status = VerdictStatus::holds;
    v.witness.emplace_back("axis", to_element(axis));
  } else {
    v.status = VerdictStatus::fails;
    v.notes = "X, Y, Z are not collinear";
  }
  return v;
}

Verdict check_pappus(const CoordinatePlane& g, const PappusInput<Flat>& in);

template <class L>
struct BrianchonInput {
  L a, b, c, a2, b2, c2;
};

template <PlaneGeometry G>
std::optional<std::string> brianchon_defect(const G& g, const BrianchonInput<typename G::Line>& in) {
  const auto& [a, b, c, a2, b2, c2] = in;
  const std::array<const typename G::Line*, 6> ls{&a, &b, &c, &a2, &b2, &c2};
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (*ls[i] == *ls[j]) return "lines are not distinct";
    }
  }
  const auto P = g.meet(a, b);
  const auto P2 = g.meet(a2, b2);
  if (!g.on(P, c)) return "a, b, c are not concurrent";
  if (!g.on(P2, c2)) return "a', b', c' are not concurrent";
  if (P == P2) return "the two pencils share their center";
  for (const auto* l : ls) {
    if (g.on(P, *l) && g.on(P2, *l)) return "a line passes through both centers";
  }
  return std::nullopt;
}

/// Holds iff c'' = (a.b', a'.b), b'' = (a.c', a'.c), a'' = (b.c', b'.c) are
/// concurrent.
template <PlaneGeometry G>
Verdict check_pappus_brianchon(const G& g, const BrianchonInput<typename G::Line>& in) {
  if (auto defect = brianchon_defect(g, in)) return Verdict::degenerate_because(*defect);
  const auto x = g.join(g.meet(in.a, in.b2), g.meet(in.a2, in.b));
  const auto y = g.join(g.meet(in.a, in.c2), g.meet(in.a2, in.c));
  const auto z = g.join(g.meet(in.b, in.c2), g.meet(in.b2, in.c));
  Verdict v;
  v.witness = {{"x", to_element(x)}, {"y", to_element(y)}, {"z", to_element(z)}};
  if (x == y && y == z) {
    v.status = VerdictStatus::holds;
    v.notes = "x, y, z coincide";
    return v;
  }
  const auto center = x == y ? g.meet(x, z) : g.meet(x, y);
  if (g.on(center, z) && g.on(center, x)) {
    v.status = VerdictStatus::holds;
    v.witness.emplace_back("center", to_element(center));
  } else {
    v.status = VerdictStatus::fails;
    v.notes = "x, y, z are not concurrent";
  }
  return v;
}

Verdict check_pappus_brianchon(const CoordinatePlane& g, const BrianchonInput<Flat>& in);

// ---- Gallucci ---------------------------------------------------------------

/// Three pairwise skew lines a, b, c with three pairwise skew common
/// transversals e, f, g; h is a further transversal of a, b, c and d of e, f, g.
struct GallucciInput {
  Flat a, b, c, e, f, g, h, d;

  std::array<std::pair<const char*, const Flat*>, 8> named() const {
    return {{{"a", &a}, {"b", &b}, {"c", &c}, {"e", &e}, {"f", &f}, {"g", &g}, {"h", &h}, {"d", &d}}};
  }
};

/// Names the first stated incidence or skewness that does not hold.
std::optional<std::string> gallucci_defect(const GallucciInput& in);

/// Holds iff h and d meet (witness: the common point R); fails with the skew
/// pair (h, d). Throws std::invalid_argument for malformed input.
Verdict check_gallucci(const GallucciInput& in);

/// Lifts a planar Pappus configuration into space: b = A'P, f = AP,
/// c = B'Q, g = BQ, a = AB, e = A'B', d the transversal from C' to f and g,
/// h the transversal from C to b and c. Requires P off the base plane and Q
/// on XP distinct from X and P. Throws DegenerateConstruction otherwise.
GallucciInput gallucci_from_pappus_config(const PappusInput<Flat>& in, const Flat& P, const Flat& Q);

/// The converse construction: with the same lift, R = YP.ZQ. Holds iff R
/// exists and lies on both h and d, which places X, Y, Z on the line where
/// the plane PQR meets the base plane.
Verdict pappus_from_gallucci_config(const PappusInput<Flat>& in, const Flat& P, const Flat& Q);

}  // namespace incidence
