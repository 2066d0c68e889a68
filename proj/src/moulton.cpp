#include "incidence/moulton.hpp"

#include <stdexcept>

#include "incidence/scalar.hpp"

namespace incidence::moulton {
namespace {

std::string frac(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

void push_unique(std::vector<Line>& out, Line l) {
  for (const auto& existing : out) {
    if (existing == l) return;
  }
  out.push_back(std::move(l));
}

void push_unique(std::vector<Point>& out, Point p) {
  for (const auto& existing : out) {
    if (existing == p) return;
  }
  out.push_back(std::move(p));
}

// Candidate lines of parameter m through an affine point.
Line sloped_through(const mpq_class& m, const AffinePoint& a) {
  return Line::sloped(m, a.y - effective_slope(m, a.x) * a.x);
}

Point ideal_of(const Line& l) {
  if (std::holds_alternative<VerticalLine>(l.value)) return Point::ideal(std::nullopt);
  return Point::ideal(std::get<SlopedLine>(l.value).parameter);
}

mpq_class parse_fraction(std::string_view text) {
  return std::get<mpq_class>(Ring::rationals().parse(text).value());
}

std::invalid_argument malformed(std::string_view what, std::string_view text) {
  return std::invalid_argument("malformed Moulton " + std::string(what) + " '" + std::string(text) + "'");
}

bool strip(std::string_view& text, std::string_view prefix, std::string_view suffix) {
  if (text.size() < prefix.size() + suffix.size() || !text.starts_with(prefix) || !text.ends_with(suffix)) {
    return false;
  }
  text = text.substr(prefix.size(), text.size() - prefix.size() - suffix.size());
  return true;
}

}  // namespace

Point parse_point(std::string_view text) {
  std::string_view body = text;
  if (strip(body, "ideal(", ")")) {
    if (body == "vertical") return Point::ideal(std::nullopt);
    return Point::ideal(parse_fraction(body));
  }
  if (!strip(body, "(", ")")) throw malformed("point", text);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) throw malformed("point", text);
  return Point::affine(parse_fraction(body.substr(0, comma)), parse_fraction(body.substr(comma + 1)));
}

Line parse_line(std::string_view text) {
  std::string_view body = text;
  if (body == "infinity") return Line::at_infinity();
  if (strip(body, "x=", "")) return Line::vertical(parse_fraction(body));
  if (!strip(body, "m=", "")) throw malformed("line", text);
  const auto sep = body.find(",b=");
  if (sep == std::string_view::npos) throw malformed("line", text);
  return Line::sloped(parse_fraction(body.substr(0, sep)), parse_fraction(body.substr(sep + 3)));
}

std::string Point::str() const {
  if (const auto* a = std::get_if<AffinePoint>(&value)) return "(" + frac(a->x) + "," + frac(a->y) + ")";
  const auto& i = std::get<IdealPoint>(value);
  return i.parameter ? "ideal(" + frac(*i.parameter) + ")" : "ideal(vertical)";
}

std::string Line::str() const {
  if (const auto* v = std::get_if<VerticalLine>(&value)) return "x=" + frac(v->x);
  if (const auto* s = std::get_if<SlopedLine>(&value)) return "m=" + frac(s->parameter) + ",b=" + frac(s->intercept);
  return "infinity";
}

mpq_class effective_slope(const mpq_class& parameter, const mpq_class& x) {
  if (sgn(parameter) < 0 && sgn(x) >= 0) return parameter / 2;
  return parameter;
}

mpq_class height_at(const SlopedLine& line, const mpq_class& x) {
  return effective_slope(line.parameter, x) * x + line.intercept;
}

bool on(const Point& p, const Line& l) {
  if (const auto* ideal = std::get_if<IdealPoint>(&p.value)) {
    if (std::holds_alternative<LineAtInfinity>(l.value)) return true;
    if (std::holds_alternative<VerticalLine>(l.value)) return !ideal->parameter.has_value();
    return ideal->parameter && *ideal->parameter == std::get<SlopedLine>(l.value).parameter;
  }
  const auto& a = std::get<AffinePoint>(p.value);
  if (const auto* v = std::get_if<VerticalLine>(&l.value)) return v->x == a.x;
  if (const auto* s = std::get_if<SlopedLine>(&l.value)) return height_at(*s, a.x) == a.y;
  return false;
}

std::vector<Line> lines_through_both(const Point& p, const Point& q) {
  std::vector<Line> candidates;
  const auto* ap = std::get_if<AffinePoint>(&p.value);
  const auto* aq = std::get_if<AffinePoint>(&q.value);
  if (!ap && !aq) {
    candidates.push_back(Line::at_infinity());
  } else if (!ap || !aq) {
    const auto& affine = ap ? *ap : *aq;
    const auto& ideal = std::get<IdealPoint>((ap ? q : p).value);
    if (ideal.parameter) {
      candidates.push_back(sloped_through(*ideal.parameter, affine));
    } else {
      candidates.push_back(Line::vertical(affine.x));
    }
  } else if (ap->x == aq->x) {
    candidates.push_back(Line::vertical(ap->x));
  } else {
    const AffinePoint& left = ap->x < aq->x ? *ap : *aq;
    const AffinePoint& right = ap->x < aq->x ? *aq : *ap;
    const mpq_class s = (right.y - left.y) / (right.x - left.x);
    // Regimes: ordinary slope s; bent with both points on the same side
    // (m = s left, m = 2s right); bent across x = 0.
    candidates.push_back(sloped_through(s, left));
    candidates.push_back(sloped_through(mpq_class(2 * s), left));
    const mpq_class span = right.x / 2 - left.x;
    if (sgn(span) != 0) candidates.push_back(sloped_through(mpq_class((right.y - left.y) / span), left));
  }
  std::vector<Line> out;
  for (auto& l : candidates) {
    if (on(p, l) && on(q, l)) push_unique(out, std::move(l));
  }
  return out;
}

Line line_through(const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("line_through: points coincide");
  auto lines = lines_through_both(p, q);
  if (lines.size() != 1) throw std::logic_error("line_through: expected a unique line");
  return std::move(lines.front());
}

std::vector<Point> common_points(const Line& a, const Line& b) {
  std::vector<Point> out;
  if (a == b) return out;
  const bool inf_a = std::holds_alternative<LineAtInfinity>(a.value);
  const bool inf_b = std::holds_alternative<LineAtInfinity>(b.value);
  if (inf_a || inf_b) {
    out.push_back(ideal_of(inf_a ? b : a));
    return out;
  }
  const auto* va = std::get_if<VerticalLine>(&a.value);
  const auto* vb = std::get_if<VerticalLine>(&b.value);
  if (va && vb) {
    out.push_back(Point::ideal(std::nullopt));
    return out;
  }
  if (va || vb) {
    const auto& v = va ? *va : *vb;
    const auto& s = std::get<SlopedLine>((va ? b : a).value);
    out.push_back(Point::affine(v.x, height_at(s, v.x)));
    return out;
  }
  const auto& sa = std::get<SlopedLine>(a.value);
  const auto& sb = std::get<SlopedLine>(b.value);
  if (sa.parameter == sb.parameter) {
    out.push_back(Point::ideal(sa.parameter));
    return out;
  }
  // Solve on each half-plane with that half's slopes.
  const mpq_class left_gap = sa.parameter - sb.parameter;
  if (sgn(left_gap) != 0) {
    const mpq_class x = (sb.intercept - sa.intercept) / left_gap;
    if (sgn(x) < 0) push_unique(out, Point::affine(x, height_at(sa, x)));
  }
  const mpq_class ka = effective_slope(sa.parameter, 0), kb = effective_slope(sb.parameter, 0);
  if (ka != kb) {
    const mpq_class x = (sb.intercept - sa.intercept) / (ka - kb);
    if (sgn(x) >= 0) push_unique(out, Point::affine(x, height_at(sa, x)));
  }
  return out;
}

Point intersection(const Line& a, const Line& b) {
  if (a == b) throw std::invalid_argument("intersection: lines coincide");
  auto points = common_points(a, b);
  if (points.size() != 1) throw std::logic_error("intersection: expected a unique point");
  return std::move(points.front());
}

Point Plane::point_on(const Line& l, const mpq_class& t) const {
  if (const auto* v = std::get_if<VerticalLine>(&l.value)) return Point::affine(v->x, t);
  if (const auto* s = std::get_if<SlopedLine>(&l.value)) return Point::affine(t, height_at(*s, t));
  return Point::ideal(t);
}

}  // namespace incidence::moulton
