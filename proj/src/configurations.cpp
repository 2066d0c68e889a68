#include "incidence/configurations.hpp"

#include <stdexcept>

namespace incidence {
namespace {

void require_rank(const Flat& f, int rank, const char* what) {
  if (f.rank() != rank) {
    throw std::invalid_argument(std::string(what) + " must have rank " + std::to_string(rank) + ", got " + f.str());
  }
}

void require_same_ring(const Flat& a, const Flat& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("flats belong to different rings");
}

Flat meet_or_throw(const Flat& a, const Flat& b, const char* what) {
  auto m = meet(a, b);
  if (!m) throw DegenerateConstruction(std::string(what) + " is empty");
  return *m;
}

Flat plane_through(std::initializer_list<Flat> pts) {
  Flat acc = *pts.begin();
  for (const auto& p : pts) acc = join(acc, p);
  return acc;
}

}  // namespace

std::string element_str(const Element& e) {
  return std::visit([](const auto& x) { return x.str(); }, e);
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::holds:
      return "holds";
    case VerdictStatus::fails:
      return "fails";
    case VerdictStatus::degenerate:
      return "degenerate";
  }
  return "unknown";
}

const Element& Verdict::at(std::string_view role) const {
  for (const auto& [name, element] : witness) {
    if (name == role) return element;
  }
  throw std::out_of_range("verdict has no witness role '" + std::string(role) + "'");
}

Flat standard_plane(const Ring& ring) {
  return Flat::span({make_vec(ring, 1, 0, 0, 0), make_vec(ring, 0, 1, 0, 0), make_vec(ring, 0, 0, 1, 0)});
}

Flat plane_point(const Scalar& x, const Scalar& y, const Scalar& z) {
  const Ring& r = x.ring();
  return Flat::point(Vec4{x, y, z, r.zero()});
}

CoordinatePlane::CoordinatePlane(Flat plane) : plane_(std::move(plane)) { require_rank(plane_, 3, "plane"); }

Flat CoordinatePlane::join(const Flat& p, const Flat& q) const {
  if (p == q) throw std::invalid_argument("join: points coincide");
  return incidence::join(p, q);
}

Flat CoordinatePlane::meet(const Flat& l, const Flat& m) const {
  if (l == m) throw std::invalid_argument("meet: lines coincide");
  auto x = incidence::meet(l, m);
  if (!x || !x->is_point()) throw std::invalid_argument("meet: lines are not coplanar");
  return *x;
}

void CoordinatePlane::require_point(const Flat& f) const {
  require_same_ring(f, plane_);
  require_rank(f, 1, "point");
  if (!incident(f, plane_)) throw std::invalid_argument("point " + f.str() + " is not in the plane");
}

void CoordinatePlane::require_line(const Flat& f) const {
  require_same_ring(f, plane_);
  require_rank(f, 2, "line");
  if (!incident(f, plane_)) throw std::invalid_argument("line " + f.str() + " is not in the plane");
}

Flat planar_dual(const Flat& f) {
  const Flat base = standard_plane(f.ring());
  if (!incident(f, base) || f.rank() > 2) throw std::invalid_argument("planar_dual: expects a point or line of x4 = 0");
  // The dual of a flat inside x4 = 0 contains e4; cut it back to the plane.
  return meet_or_throw(dual(f), base, "planar dual");
}

Flat transversal_from_point(const Flat& a, const Flat& b, const Flat& p) {
  require_rank(p, 1, "transversal point");
  if (!are_skew(a, b)) throw std::invalid_argument("transversal_from_point: lines are not skew");
  if (incident(p, a) || incident(p, b)) throw std::invalid_argument("transversal_from_point: point lies on a line");
  return meet_or_throw(join(a, p), join(b, p), "transversal");
}

std::vector<Flat> transversals_of_three_skew(const Flat& a, const Flat& b, const Flat& c, std::size_t limit) {
  if (!are_skew(a, b) || !are_skew(a, c) || !are_skew(b, c)) {
    throw std::invalid_argument("transversals_of_three_skew: lines are not pairwise skew");
  }
  std::vector<Flat> out;
  for (const auto& x : sweep_points(a, limit)) out.push_back(transversal_from_point(b, c, x));
  return out;
}

Verdict check_desargues_planar(const CoordinatePlane& g, const DesarguesInput<Flat>& in) {
  for (const auto* p : {&in.A, &in.B, &in.C, &in.A2, &in.B2, &in.C2, &in.S}) g.require_point(*p);
  return check_desargues_planar<CoordinatePlane>(g, in);
}

Verdict check_pappus(const CoordinatePlane& g, const PappusInput<Flat>& in) {
  for (const auto* p : {&in.A, &in.B, &in.C, &in.A2, &in.B2, &in.C2}) g.require_point(*p);
  return check_pappus<CoordinatePlane>(g, in);
}

Verdict check_pappus_brianchon(const CoordinatePlane& g, const BrianchonInput<Flat>& in) {
  for (const auto* l : {&in.a, &in.b, &in.c, &in.a2, &in.b2, &in.c2}) g.require_line(*l);
  return check_pappus_brianchon<CoordinatePlane>(g, in);
}

Verdict desargues_via_lift(const CoordinatePlane& g, const DesarguesInput<Flat>& in, const Flat& off_plane) {
  const Verdict planar = check_desargues_planar(g, in);
  if (planar.degenerate()) return planar;
  require_rank(off_plane, 1, "lift point");
  if (incident(off_plane, g.plane())) throw std::invalid_argument("desargues_via_lift: lift point lies in the plane");

  const Flat& alpha = g.plane();
  const Flat l = join(in.S, off_plane);
  const Flat cc = join(in.C, in.C2);
  const Flat gamma = join(l, cc);

  for (const auto& D : sweep_points(gamma, 256)) {
    if (incident(D, l) || incident(D, cc)) continue;
    const Flat E = meet_or_throw(join(in.C, D), l, "CD.l");
    const Flat E2 = meet_or_throw(join(in.C2, D), l, "C'D.l");
    const Flat beta = plane_through({in.A, in.B, E});
    const Flat beta2 = plane_through({in.A2, in.B2, E2});
    if (beta == beta2) continue;
    const Flat s = meet_or_throw(beta, beta2, "side planes");
    const Flat F = meet_or_throw(join(in.A, E), join(in.A2, E2), "AE.A'E'");
    const Flat G = meet_or_throw(join(in.B, E), join(in.B2, E2), "BE.B'E'");
    const Flat X = meet_or_throw(s, alpha, "s'.alpha");
    const Flat Y = meet_or_throw(join(D, F), alpha, "DF.alpha");
    const Flat Z = meet_or_throw(join(D, G), alpha, "DG.alpha");
    const Flat axis = meet_or_throw(join(D, s), alpha, "(D,s').alpha");
    if (!X.is_point() || !Y.is_point() || !Z.is_point() || !axis.is_line()) continue;

    Verdict v;
    v.witness = {{"X", X}, {"Y", Y}, {"Z", Z}, {"axis", axis}, {"D", D}};
    const bool on_axis = incident(X, axis) && incident(Y, axis) && incident(Z, axis);
    const bool agrees = X == std::get<Flat>(planar.at("X")) && Y == std::get<Flat>(planar.at("Y")) &&
                        Z == std::get<Flat>(planar.at("Z"));
    v.status = on_axis && agrees ? VerdictStatus::holds : VerdictStatus::fails;
    if (!agrees) v.notes = "lifted side intersections differ from the planar ones";
    else if (!on_axis) v.notes = "lifted side intersections are not on the projected axis";
    return v;
  }
  return Verdict::degenerate_because("no admissible auxiliary point D found");
}

Verdict check_desargues_spatial(const std::array<Flat, 3>& first, const std::array<Flat, 3>& second) {
  static constexpr const char* kNames[2][3] = {{"A", "B", "C"}, {"A'", "B'", "C'"}};
  for (int t = 0; t < 2; ++t) {
    for (const auto& p : t == 0 ? first : second) {
      require_rank(p, 1, "triangle vertex");
      require_same_ring(p, first[0]);
    }
  }
  std::vector<Flat> all(first.begin(), first.end());
  all.insert(all.end(), second.begin(), second.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) return Verdict::degenerate_because("vertices are not distinct");
    }
  }
  if (collinear({first[0], first[1], first[2]})) return Verdict::degenerate_because("first triangle is collinear");
  if (collinear({second[0], second[1], second[2]})) return Verdict::degenerate_because("second triangle is collinear");
  if (coplanar(std::span<const Flat>(all))) return Verdict::degenerate_because("triangles are coplanar");

  static constexpr std::array<std::pair<int, int>, 3> kSides{{{0, 1}, {0, 2}, {1, 2}}};
  std::vector<std::pair<std::string, Element>> side_points;
  std::optional<std::pair<std::string, std::string>> skew_names;
  std::optional<std::pair<Flat, Flat>> skew_pair;
  for (const auto& [i, j] : kSides) {
    const Flat s1 = join(first[i], first[j]);
    const Flat s2 = join(second[i], second[j]);
    if (s1 == s2) return Verdict::degenerate_because("corresponding sides coincide");
    const std::string name = std::string(kNames[0][i]) + kNames[0][j];
    if (auto m = meet(s1, s2)) {
      side_points.emplace_back(name, *m);
    } else if (!skew_pair) {
      skew_pair.emplace(s1, s2);
      skew_names.emplace(name, std::string(kNames[1][i]) + kNames[1][j]);
    }
  }
  const Flat c0 = join(first[0], second[0]), c1 = join(first[1], second[1]), c2 = join(first[2], second[2]);
  if (c0 == c1 || c0 == c2 || c1 == c2) return Verdict::degenerate_because("connectors coincide");
  const auto O = meet(c0, c1);
  const bool concurrent = O && incident(*O, c2);
  const bool sides_meet = !skew_pair;

  Verdict v;
  if (sides_meet && concurrent) {
    v.status = VerdictStatus::holds;
    v.witness.emplace_back("O", *O);
    for (auto& sp : side_points) v.witness.push_back(std::move(sp));
    return v;
  }
  v.status = VerdictStatus::fails;
  if (skew_pair) {
    v.witness.emplace_back(skew_names->first, skew_pair->first);
    v.witness.emplace_back(skew_names->second, skew_pair->second);
  } else {
    v.witness = {{"AA'", c0}, {"BB'", c1}, {"CC'", c2}};
  }
  v.notes = sides_meet == concurrent ? "not in perspective" : "equivalence violated";
  return v;
}

std::optional<std::string> gallucci_defect(const GallucciInput& in) {
  for (const auto& [name, line] : in.named()) {
    if (line->rank() != 2) return std::string(name) + " is not a line";
    if (line->ring() != in.a.ring()) return std::string(name) + " belongs to another ring";
  }
  auto skew = [](const Flat& x, const Flat& y) { return are_skew(x, y); };
  auto meets = [](const Flat& x, const Flat& y) { return x == y || !are_skew(x, y); };
  if (!skew(in.a, in.b) || !skew(in.a, in.c) || !skew(in.b, in.c)) return "a, b, c are not pairwise skew";
  if (!skew(in.e, in.f) || !skew(in.e, in.g) || !skew(in.f, in.g)) return "e, f, g are not pairwise skew";
  const std::array<std::pair<const char*, const Flat*>, 3> first{{{"a", &in.a}, {"b", &in.b}, {"c", &in.c}}};
  const std::array<std::pair<const char*, const Flat*>, 3> second{{{"e", &in.e}, {"f", &in.f}, {"g", &in.g}}};
  for (const auto& [n1, l1] : first) {
    for (const auto& [n2, l2] : second) {
      if (!meets(*l1, *l2)) return std::string(n2) + " does not meet " + n1;
    }
    if (!meets(*l1, in.h)) return std::string("h does not meet ") + n1;
  }
  for (const auto& [n2, l2] : second) {
    if (!meets(*l2, in.d)) return std::string("d does not meet ") + n2;
  }
  for (const auto& [n, l] : first) {
    if (*l == in.h) return std::string("h coincides with ") + n;
  }
  for (const auto& [n, l] : second) {
    if (*l == in.d) return std::string("d coincides with ") + n;
  }
  return std::nullopt;
}

Verdict check_gallucci(const GallucciInput& in) {
  if (auto defect = gallucci_defect(in)) throw std::invalid_argument("malformed Gallucci input: " + *defect);
  Verdict v;
  if (in.h == in.d) {
    v.status = VerdictStatus::holds;
    v.witness.emplace_back("common line", in.h);
    v.notes = "h and d coincide";
    return v;
  }
  if (auto R = meet(in.h, in.d)) {
    v.status = VerdictStatus::holds;
    v.witness.emplace_back("R", *R);
    return v;
  }
  v.status = VerdictStatus::fails;
  v.witness = {{"h", in.h}, {"d", in.d}};
  v.notes = "h and d are skew";
  return v;
}

namespace {

struct Lift {
  Flat alpha;
  GallucciInput input;
  Flat X;
};

Lift lift_pappus(const PappusInput<Flat>& in, const Flat& P, const Flat& Q) {
  for (const auto* p : {&in.A, &in.B, &in.C, &in.A2, &in.B2, &in.C2, &P, &Q}) {
    require_rank(*p, 1, "point");
    require_same_ring(*p, in.A);
  }
  const std::array<Flat, 6> six{in.A, in.B, in.C, in.A2, in.B2, in.C2};
  Flat alpha = six[0];
  for (const auto& p : six) alpha = join(alpha, p);
  if (!alpha.is_plane()) throw DegenerateConstruction("configuration does not span a plane");
  const CoordinatePlane g(alpha);
  if (auto defect = pappus_defect(g, in)) throw DegenerateConstruction("degenerate Pappus configuration: " + *defect);
  if (incident(P, alpha)) throw DegenerateConstruction("P lies in the configuration plane");
  const Flat X = g.meet(g.join(in.A, in.B2), g.join(in.A2, in.B));
  if (Q == X) throw DegenerateConstruction("Q coincides with X");
  if (Q == P) throw DegenerateConstruction("Q coincides with P");
  if (!incident(Q, join(X, P))) throw DegenerateConstruction("Q is not on the line XP");

  GallucciInput out{.a = join(in.A, in.B),
                    .b = join(in.A2, P),
                    .c = join(in.B2, Q),
                    .e = join(in.A2, in.B2),
                    .f = join(in.A, P),
                    .g = join(in.B, Q),
                    .h = join(in.A, in.B),
                    .d = join(in.A, in.B)};
  out.d = transversal_from_point(out.f, out.g, in.C2);
  out.h = transversal_from_point(out.b, out.c, in.C);
  if (auto defect = gallucci_defect(out)) throw DegenerateConstruction("lifted configuration is malformed: " + *defect);
  return {alpha, std::move(out), X};
}

}  // namespace

GallucciInput gallucci_from_pappus_config(const PappusInput<Flat>& in, const Flat& P, const Flat& Q) {
  return lift_pappus(in, P, Q).input;
}

Verdict pappus_from_gallucci_config(const PappusInput<Flat>& in, const Flat& P, const Flat& Q) {
  const Lift lift = lift_pappus(in, P, Q);
  const CoordinatePlane g(lift.alpha);
  const Flat Y = g.meet(g.join(in.A, in.C2), g.join(in.A2, in.C));
  const Flat Z = g.meet(g.join(in.B, in.C2), g.join(in.B2, in.C));
  const Flat YP = join(Y, P), ZQ = join(Z, Q);
  Verdict v;
  const auto R = meet(YP, ZQ);
  if (R && R->is_point() && incident(*R, lift.input.h) && incident(*R, lift.input.d)) {
    v.status = VerdictStatus::holds;
    const Flat axis = meet_or_throw(plane_through({P, Q, *R}), lift.alpha, "(P,Q,R).alpha");
    v.witness = {{"R", *R}, {"X", lift.X}, {"Y", Y}, {"Z", Z}, {"axis", axis}};
    return v;
  }
  v.status = VerdictStatus::fails;
  if (R) {
    v.witness = {{"R", *R}, {"h", lift.input.h}, {"d", lift.input.d}};
    v.notes = "R misses h or d";
  } else {
    v.witness = {{"YP", YP}, {"ZQ", ZQ}};
    v.notes = "YP and ZQ are skew";
  }
  return v;
}

}  // namespace incidence
