#include "incidence/generators.hpp"

#include <vector>

namespace incidence {

Flat random_point_in(const Flat& f, Rng& rng, int height) {
  for (;;) {
    std::vector<Scalar> coeffs;
    bool any = false;
    for (int i = 0; i < f.rank(); ++i) {
      coeffs.push_back(random_scalar(f.ring(), rng, height));
      any = any || !coeffs.back().is_zero();
    }
    if (any) return point_in(f, coeffs);
  }
}

std::optional<Flat> random_point_avoiding(const Flat& f, std::initializer_list<const Flat*> avoid, Rng& rng,
                                          int height, int attempts) {
  for (int t = 0; t < attempts; ++t) {
    Flat p = random_point_in(f, rng, height);
    bool ok = true;
    for (const Flat* a : avoid) ok = ok && !incident(p, *a);
    if (ok) return p;
  }
  return std::nullopt;
}

Flat random_point(const Ring& ring, Rng& rng, int height) { return random_point_in(Flat::whole(ring), rng, height); }

Flat random_line(const Ring& ring, Rng& rng, int height) {
  const Flat p = random_point(ring, rng, height);
  for (;;) {
    const Flat q = random_point(ring, rng, height);
    if (!(q == p)) return join(p, q);
  }
}

Flat random_plane_point(const Ring& ring, Rng& rng, int height) {
  return random_point_in(standard_plane(ring), rng, height);
}

mpq_class random_rational(Rng& rng, int height) {
  return std::get<mpq_class>(random_scalar(Ring::rationals(), rng, height).value());
}

moulton::Point random_moulton_point(Rng& rng, int height) {
  auto x = random_rational(rng, height);
  auto y = random_rational(rng, height);
  return moulton::Point::affine(std::move(x), std::move(y));
}

namespace {

/// Random point of `line` other than the listed points.
std::optional<Flat> point_on_line(const Flat& line, std::initializer_list<const Flat*> avoid, Rng& rng, int height) {
  return random_point_avoiding(line, avoid, rng, height);
}

}  // namespace

Sample<DesarguesInput<Flat>> sample_desargues(const Ring& ring, Rng& rng, int height) {
  const CoordinatePlane g(standard_plane(ring));
  const Flat S = random_plane_point(ring, rng, height);
  const Flat A = random_plane_point(ring, rng, height);
  const Flat B = random_plane_point(ring, rng, height);
  const Flat C = random_plane_point(ring, rng, height);
  if (A == S || B == S || C == S) return Sample<DesarguesInput<Flat>>::reject("vertex coincides with the center");
  auto A2 = point_on_line(join(S, A), {&S, &A}, rng, height);
  auto B2 = point_on_line(join(S, B), {&S, &B}, rng, height);
  auto C2 = point_on_line(join(S, C), {&S, &C}, rng, height);
  if (!A2 || !B2 || !C2) return Sample<DesarguesInput<Flat>>::reject("connector has too few points");
  DesarguesInput<Flat> in{A, B, C, *A2, *B2, *C2, S};
  if (auto defect = desargues_defect(g, in)) return Sample<DesarguesInput<Flat>>::reject(*defect);
  return {in, {}};
}

Sample<std::array<std::array<Flat, 3>, 2>> sample_desargues_spatial(const Ring& ring, Rng& rng, int height) {
  using S = Sample<std::array<std::array<Flat, 3>, 2>>;
  const Flat O = random_point(ring, rng, height);
  std::array<Flat, 3> first{random_point(ring, rng, height), random_point(ring, rng, height),
                            random_point(ring, rng, height)};
  std::vector<Flat> second;
  for (const auto& v : first) {
    if (v == O) return S::reject("vertex coincides with the center");
    auto w = point_on_line(join(O, v), {&O, &v}, rng, height);
    if (!w) return S::reject("connector has too few points");
    second.push_back(*w);
  }
  std::array<Flat, 3> other{second[0], second[1], second[2]};
  std::vector<Flat> all{first[0], first[1], first[2], other[0], other[1], other[2]};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i] == all[j]) return S::reject("vertices are not distinct");
    }
  }
  if (collinear({first[0], first[1], first[2]}) || collinear({other[0], other[1], other[2]})) {
    return S::reject("a triangle is collinear");
  }
  if (coplanar(std::span<const Flat>(all))) return S::reject("triangles are coplanar");
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    if (join(first[i], first[j]) == join(other[i], other[j])) return S::reject("corresponding sides coincide");
  }
  return {std::array<std::array<Flat, 3>, 2>{first, other}, {}};
}

Sample<PappusInput<Flat>> sample_pappus(const Ring& ring, Rng& rng, int height) {
  using S = Sample<PappusInput<Flat>>;
  const CoordinatePlane g(standard_plane(ring));
  const Flat P1 = random_plane_point(ring, rng, height), P2 = random_plane_point(ring, rng, height);
  const Flat P3 = random_plane_point(ring, rng, height), P4 = random_plane_point(ring, rng, height);
  if (P1 == P2 || P3 == P4) return S::reject("line needs two distinct points");
  const Flat l1 = join(P1, P2), l2 = join(P3, P4);
  if (l1 == l2) return S::reject("the two ranges share their line");
  const Flat K = *meet(l1, l2);
  auto A = point_on_line(l1, {&K}, rng, height), B = point_on_line(l1, {&K}, rng, height);
  auto C = point_on_line(l1, {&K}, rng, height);
  auto A2 = point_on_line(l2, {&K}, rng, height), B2 = point_on_line(l2, {&K}, rng, height);
  auto C2 = point_on_line(l2, {&K}, rng, height);
  if (!A || !B || !C || !A2 || !B2 || !C2) return S::reject("range has too few points");
  PappusInput<Flat> in{*A, *B, *C, *A2, *B2, *C2};
  if (auto defect = pappus_defect(g, in)) return S::reject(*defect);
  return {in, {}};
}

Sample<BrianchonInput<Flat>> sample_brianchon(const Ring& ring, Rng& rng, int height) {
  using S = Sample<BrianchonInput<Flat>>;
  const CoordinatePlane g(standard_plane(ring));
  const Flat P = random_plane_point(ring, rng, height), P2 = random_plane_point(ring, rng, height);
  if (P == P2) return S::reject("the two pencils share their center");
  std::vector<Flat> lines;
  for (const Flat* center : {&P, &P, &P, &P2, &P2, &P2}) {
    const Flat other = random_plane_point(ring, rng, height);
    if (other == *center) return S::reject("line needs two distinct points");
    lines.push_back(join(*center, other));
  }
  BrianchonInput<Flat> in{lines[0], lines[1], lines[2], lines[3], lines[4], lines[5]};
  if (auto defect = brianchon_defect(g, in)) return S::reject(*defect);
  return {in, {}};
}

Sample<GallucciInput> sample_gallucci(const Ring& ring, Rng& rng, int height) {
  using S = Sample<GallucciInput>;
  const Flat a = random_line(ring, rng, height), b = random_line(ring, rng, height);
  const Flat c = random_line(ring, rng, height);
  if (!are_skew(a, b) || !are_skew(a, c) || !are_skew(b, c)) return S::reject("a, b, c are not pairwise skew");
  std::vector<Flat> transversals;
  for (int i = 0; i < 4; ++i) transversals.push_back(transversal_from_point(b, c, random_point_in(a, rng, height)));
  const Flat &e = transversals[0], &f = transversals[1], &g = transversals[2], &h = transversals[3];
  if (e == f || e == g || f == g) return S::reject("e, f, g are not distinct");
  const Flat Y = random_point_in(e, rng, height);
  GallucciInput in{a, b, c, e, f, g, h, transversal_from_point(f, g, Y)};
  if (auto defect = gallucci_defect(in)) return S::reject(*defect);
  return {in, {}};
}

Sample<DesarguesInput<moulton::Point>> sample_moulton_desargues(Rng& rng, int height) {
  using S = Sample<DesarguesInput<moulton::Point>>;
  const moulton::Plane g;
  const auto center = random_moulton_point(rng, height);
  std::vector<moulton::Point> first, second;
  for (int i = 0; i < 3; ++i) {
    auto v = random_moulton_point(rng, height);
    if (v == center) return S::reject("vertex coincides with the center");
    const auto connector = g.join(center, v);
    auto w = g.point_on(connector, random_rational(rng, height));
    first.push_back(std::move(v));
    second.push_back(std::move(w));
  }
  DesarguesInput<moulton::Point> in{first[0], first[1], first[2], second[0], second[1], second[2], center};
  if (auto defect = desargues_defect(g, in)) return S::reject(*defect);
  return {in, {}};
}

Sample<TransportSample> sample_transport(const Ring& ring, Rng& rng, int height) {
  using S = Sample<TransportSample>;
  auto pappus = sample_pappus(ring, rng, height);
  if (!pappus.value) return S::reject(pappus.rejected);
  auto lift = sample_lift(*pappus.value, rng, height);
  if (!lift.value) return S::reject(lift.rejected);
  return {TransportSample{*pappus.value, lift.value->first, lift.value->second}, {}};
}

Sample<std::pair<Flat, Flat>> sample_lift(const PappusInput<Flat>& in, Rng& rng, int height) {
  using S = Sample<std::pair<Flat, Flat>>;
  const Ring ring = in.A.ring();
  const Flat alpha = standard_plane(ring);
  auto P = random_point_avoiding(Flat::whole(ring), {&alpha}, rng, height);
  if (!P) return S::reject("no lift point off the plane");
  const Flat X = *meet(join(in.A, in.B2), join(in.A2, in.B));
  auto Q = point_on_line(join(X, *P), {&X, &*P}, rng, height);
  if (!Q) return S::reject("line XP has too few points");
  return {std::pair{*P, *Q}, {}};
}

}  // namespace incidence
