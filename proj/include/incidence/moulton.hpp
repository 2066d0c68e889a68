#pragma once

/**
 * @file moulton.hpp
 * @brief The Moulton plane: a projective plane in which Desargues fails.
 *
 * Affine points are pairs of rationals. A line of parameter m < 0 has slope
 * m on x < 0 and slope m/2 on x >= 0; lines with m >= 0 and vertical lines
 * are ordinary. Lines with equal parameter are parallel and share one ideal
 * point; the ideal points form the line at infinity.
 */

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace incidence::moulton {

struct AffinePoint {
  mpq_class x, y;
  friend bool operator==(const AffinePoint& a, const AffinePoint& b) { return a.x == b.x && a.y == b.y; }
};

/// Direction class of parallel lines; an empty parameter is the vertical class.
struct IdealPoint {
  std::optional<mpq_class> parameter;
  friend bool operator==(const IdealPoint& a, const IdealPoint& b) { return a.parameter == b.parameter; }
};

struct Point {
  std::variant<AffinePoint, IdealPoint> value;

  static Point affine(mpq_class x, mpq_class y) { return {AffinePoint{std::move(x), std::move(y)}}; }
  static Point ideal(std::optional<mpq_class> parameter) { return {IdealPoint{std::move(parameter)}}; }
  bool is_ideal() const { return std::holds_alternative<IdealPoint>(value); }
  std::string str() const;
  friend bool operator==(const Point&, const Point&) = default;
};

struct VerticalLine {
  mpq_class x;
  friend bool operator==(const VerticalLine& a, const VerticalLine& b) { return a.x == b.x; }
};

struct SlopedLine {
  mpq_class parameter;  // slope for x < 0
  mpq_class intercept;  // value at x = 0
  friend bool operator==(const SlopedLine& a, const SlopedLine& b) {
    return a.parameter == b.parameter && a.intercept == b.intercept;
  }
};

struct LineAtInfinity {
  friend bool operator==(const LineAtInfinity&, const LineAtInfinity&) { return true; }
};

struct Line {
  std::variant<VerticalLine, SlopedLine, LineAtInfinity> value;

  static Line vertical(mpq_class x) { return {VerticalLine{std::move(x)}}; }
  static Line sloped(mpq_class m, mpq_class b) { return {SlopedLine{std::move(m), std::move(b)}}; }
  static Line at_infinity() { return {LineAtInfinity{}}; }
  std::string str() const;
  friend bool operator==(const Line&, const Line&) = default;
};

/// Slope of a line of parameter m at abscissa x.
mpq_class effective_slope(const mpq_class& parameter, const mpq_class& x);
/// y-value of a sloped line at x.
mpq_class height_at(const SlopedLine& line, const mpq_class& x);

bool on(const Point& p, const Line& l);

/// The unique line through two distinct points. Throws std::invalid_argument
/// for equal points.
Line line_through(const Point& p, const Point& q);

/// The unique common point of two distinct lines. Throws std::invalid_argument
/// for equal lines.
Point intersection(const Line& a, const Line& b);

/// All lines through both points, found by solving every slope regime
/// independently. A projective plane yields exactly one.
std::vector<Line> lines_through_both(const Point& p, const Point& q);
/// All common points of two lines, solving each half-plane separately.
std::vector<Point> common_points(const Line& a, const Line& b);

/// Inverses of Point::str() and Line::str(). Throw std::invalid_argument.
Point parse_point(std::string_view text);
Line parse_line(std::string_view text);

/// Plane geometry adapter used by the generic planar verifiers.
class Plane {
 public:
  using Point = moulton::Point;
  using Line = moulton::Line;

  Line join(const Point& p, const Point& q) const { return line_through(p, q); }
  Point meet(const Line& a, const Line& b) const { return intersection(a, b); }
  bool on(const Point& p, const Line& l) const { return moulton::on(p, l); }
  /// Point of `l` with the given abscissa (affine lines) or ordinate
  /// (vertical lines).
  Point point_on(const Line& l, const mpq_class& t) const;
};

}  // namespace incidence::moulton
