#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "incidence/configurations.hpp"
#include "incidence/generators.hpp"
#include "incidence/parallel.hpp"
#include "test_support.hpp"

using namespace incidence;
using namespace incidence::testing;

namespace {

const Flat& flat(const Verdict& v, std::string_view role) { return std::get<Flat>(v.at(role)); }

/// Independent collinearity oracle: the 3x4 coordinate matrix has rank <= 2.
bool collinear_by_rank(const Flat& x, const Flat& y, const Flat& z) {
  const std::array<Vec4, 3> rows{x.rows()[0], y.rows()[0], z.rows()[0]};
  return span_rank(rows) <= 2;
}

}  // namespace

TEST_CASE("transversal from a point") {
  const Ring q = Ring::rationals();
  const Flat a = line(q, {1, 0, 0, 0}, {0, 1, 0, 0});
  const Flat b = line(q, {0, 0, 1, 0}, {0, 0, 0, 1});
  const Flat P = pt(q, 1, 1, 1, 1);
  const Flat t = transversal_from_point(a, b, P);
  CHECK(t == line(q, {1, 1, 0, 0}, {0, 0, 1, 1}));
  CHECK(incident(P, t));
  CHECK(meet(t, a).has_value());
  CHECK(meet(t, b).has_value());
  CHECK_THROWS_AS(transversal_from_point(a, b, pt(q, 1, 0, 0, 0)), std::invalid_argument);
  CHECK_THROWS_AS(transversal_from_point(a, line(q, {0, 1, 0, 0}, {0, 0, 1, 0}), P), std::invalid_argument);

  const Ring f3 = Ring::prime_field(3);
  const Flat t3 = transversal_from_point(line(f3, {1, 0, 0, 0}, {0, 1, 0, 0}), line(f3, {0, 0, 1, 0}, {0, 0, 0, 1}),
                                         pt(f3, 1, 0, 1, 0));
  CHECK(t3 == line(f3, {1, 0, 0, 0}, {0, 0, 1, 0}));
}

TEST_CASE("transversals of three skew lines") {
  const Ring f3 = Ring::prime_field(3);
  const Flat a = line(f3, {1, 0, 0, 0}, {0, 1, 0, 0});
  const Flat b = line(f3, {0, 0, 1, 0}, {0, 0, 0, 1});
  const Flat c = line(f3, {1, 0, 1, 0}, {0, 1, 0, 1});
  const auto ts = transversals_of_three_skew(a, b, c, 100);
  REQUIRE(ts.size() == 4);
  for (const Flat& expected : {line(f3, {1, 0, 0, 0}, {0, 0, 1, 0}), line(f3, {0, 1, 0, 0}, {0, 0, 0, 1}),
                               line(f3, {1, 1, 0, 0}, {0, 0, 1, 1}), line(f3, {1, 2, 0, 0}, {0, 0, 2, 1})}) {
    CHECK(std::find(ts.begin(), ts.end(), expected) != ts.end());
  }
  // Oracle: every line of PG(3,3) meeting a, b and c, by brute force.
  std::size_t brute = 0;
  for (const Flat& l : all_flats(f3, 2)) {
    if (l == a || l == b || l == c) continue;
    if (meet(l, a) && meet(l, b) && meet(l, c)) ++brute;
  }
  CHECK(brute == 4);
  // The regulus lies on the quadric x1 x4 = x2 x3.
  for (const auto& t : ts) {
    for (const auto& p : points_of(t)) {
      const auto& v = p.rows()[0];
      CHECK(v[0] * v[3] == v[1] * v[2]);
    }
  }

  const Ring f2 = Ring::prime_field(2);
  CHECK(transversals_of_three_skew(line(f2, {1, 0, 0, 0}, {0, 1, 0, 0}), line(f2, {0, 0, 1, 0}, {0, 0, 0, 1}),
                                   line(f2, {1, 0, 1, 0}, {0, 1, 0, 1}), 100)
            .size() == 3);

  const Ring q = Ring::rationals();
  const auto rq = transversals_of_three_skew(line(q, {1, 0, 0, 0}, {0, 1, 0, 0}), line(q, {0, 0, 1, 0}, {0, 0, 0, 1}),
                                             line(q, {1, 0, 1, 0}, {0, 1, 0, 1}), 5);
  REQUIRE(rq.size() == 5);
  for (std::size_t i = 0; i < rq.size(); ++i) {
    for (std::size_t j = i + 1; j < rq.size(); ++j) CHECK(are_skew(rq[i], rq[j]));
  }
  CHECK_THROWS_AS(transversals_of_three_skew(a, a, c, 4), std::invalid_argument);
}

TEST_CASE("planar Desargues over coordinatized planes") {
  for (const Ring& ring : {Ring::prime_field(5), Ring::rationals(), Ring::quaternions()}) {
    CAPTURE(ring.tag());
    const CoordinatePlane g(standard_plane(ring));
    int checked = 0;
    for (std::uint64_t trial = 0; checked < 40; ++trial) {
      Rng rng = trial_rng(11, trial, Stream::desargues);
      auto s = sample_desargues(ring, rng, 3);
      if (!s.value) continue;
      ++checked;
      const Verdict v = check_desargues_planar(g, *s.value);
      REQUIRE(v.holds());
      const Flat& axis = flat(v, "axis");
      for (const char* role : {"X", "Y", "Z"}) CHECK(incident(flat(v, role), axis));
      // Cross-check through the spatial construction.
      const Verdict lifted = desargues_via_lift(g, *s.value, pt(ring, 0, 0, 0, 1));
      REQUIRE(lifted.holds());
      CHECK(flat(lifted, "axis") == axis);
    }
  }
}

TEST_CASE("planar Desargues degeneracies and malformed input") {
  const Ring q = Ring::rationals();
  const CoordinatePlane g(standard_plane(q));
  const DesarguesInput<Flat> base{ppt(q, 1, 0, 1), ppt(q, 0, 1, 1), ppt(q, -1, -1, 1), ppt(q, 2, 0, 1),
                                  ppt(q, 0, 2, 1), ppt(q, -2, -2, 1), ppt(q, 0, 0, 1)};
  CHECK(check_desargues_planar(g, base).holds());
  auto same = base;
  same.A2 = same.A;
  const Verdict v = check_desargues_planar(g, same);
  CHECK(v.degenerate());
  CHECK(v.notes == "corresponding vertices coincide");
  auto skewed = base;
  skewed.C2 = ppt(q, 5, 3, 1);
  CHECK(check_desargues_planar(g, skewed).notes == "connectors are not concurrent at the center");
  auto off = base;
  off.S = pt(q, 0, 0, 1, 1);
  CHECK_THROWS_AS(check_desargues_planar(g, off), std::invalid_argument);
}

TEST_CASE("Moulton plane: a Desargues failure is found and re-verifies") {
  const moulton::Plane g;
  std::optional<DesarguesInput<moulton::Point>> found;
  std::uint64_t trial = 0;
  for (; trial < 2000 && !found; ++trial) {
    Rng rng = trial_rng(7, trial, Stream::moulton_desargues);
    auto s = sample_moulton_desargues(rng, 4);
    if (s.value && check_desargues_planar(g, *s.value).fails()) found = s.value;
  }
  REQUIRE(found);
  const Verdict v = check_desargues_planar(g, *found);
  REQUIRE(v.fails());
  const auto& X = std::get<moulton::Point>(v.at("X"));
  const auto& Y = std::get<moulton::Point>(v.at("Y"));
  const auto& Z = std::get<moulton::Point>(v.at("Z"));
  // Independent re-check: no line through X and Y contains Z.
  for (const auto& l : moulton::lines_through_both(X, Y)) CHECK_FALSE(moulton::on(Z, l));
  // Some side of the configuration must bend: a negative parameter line crossing x = 0.
  bool bent = false;
  for (auto [p, r] : {std::pair{&found->A, &found->B}, {&found->A, &found->C}, {&found->B, &found->C},
                      {&found->A2, &found->B2}, {&found->A2, &found->C2}, {&found->B2, &found->C2}}) {
    const auto l = g.join(*p, *r);
    if (const auto* s = std::get_if<moulton::SlopedLine>(&l.value); s && sgn(s->parameter) < 0) bent = true;
  }
  CHECK(bent);
}

TEST_CASE("spatial Desargues") {
  const Ring q = Ring::rationals();
  const Flat O = pt(q, 1, 1, 1, 1);
  const std::array<Flat, 3> t1{pt(q, 1, 0, 0, 0), pt(q, 0, 1, 0, 0), pt(q, 0, 0, 1, 0)};
  std::array<Flat, 3> t2{Flat::point(make_vec(q, 2, 1, 1, 1)), Flat::point(make_vec(q, 1, 3, 1, 1)),
                         Flat::point(make_vec(q, 1, 1, 4, 1))};
  const Verdict v = check_desargues_spatial(t1, t2);
  REQUIRE(v.holds());
  CHECK(flat(v, "O") == O);

  // Move one vertex off its connector: sides through it become skew.
  t2[2] = pt(q, 0, 1, 4, 1);
  const Verdict w = check_desargues_spatial(t1, t2);
  REQUIRE(w.fails());
  CHECK(w.notes == "not in perspective");
  const auto& s1 = std::get<Flat>(w.witness[0].second);
  const auto& s2 = std::get<Flat>(w.witness[1].second);
  CHECK(are_skew(s1, s2));

  const std::array<Flat, 3> coplanar_t2{pt(q, 1, 1, 0, 0), pt(q, 0, 1, 1, 0), pt(q, 1, 0, 2, 0)};
  CHECK(check_desargues_spatial(t1, coplanar_t2).degenerate());

  for (const Ring& ring : {Ring::prime_field(5), Ring::quaternions()}) {
    int checked = 0;
    for (std::uint64_t trial = 0; checked < 30; ++trial) {
      Rng rng = trial_rng(3, trial, Stream::desargues_spatial);
      auto s = sample_desargues_spatial(ring, rng, 3);
      if (!s.value) continue;
      ++checked;
      CHECK(check_desargues_spatial((*s.value)[0], (*s.value)[1]).holds());
    }
  }
}

TEST_CASE("Pappus: symmetric rational example") {
  const Ring q = Ring::rationals();
  const CoordinatePlane g(standard_plane(q));
  const PappusInput<Flat> in{ppt(q, 0, 1, 1),  ppt(q, 1, 1, 1),  ppt(q, 2, 1, 1),
                             ppt(q, 0, -1, 1), ppt(q, 1, -1, 1), ppt(q, 2, -1, 1)};
  const Verdict v = check_pappus(g, in);
  REQUIRE(v.holds());
  CHECK(flat(v, "axis") == line(q, {1, 0, 0, 0}, {0, 0, 1, 0}));

  // Dual sextuple through the planar duality.
  const BrianchonInput<Flat> dual_in{planar_dual(in.A),  planar_dual(in.B),  planar_dual(in.C),
                                     planar_dual(in.A2), planar_dual(in.B2), planar_dual(in.C2)};
  CHECK(check_pappus_brianchon(g, dual_in).holds());
}

TEST_CASE("Pappus and its dual hold on every GF(5) configuration with fixed ranges") {
  // The collineation group acts transitively on ordered pairs of distinct
  // lines, so fixing the two ranges loses no generality.
  const Ring f5 = Ring::prime_field(5);
  const CoordinatePlane g(standard_plane(f5));
  const Flat l1 = join(ppt(f5, 1, 0, 0), ppt(f5, 0, 0, 1));
  const Flat l2 = join(ppt(f5, 0, 1, 0), ppt(f5, 0, 0, 1));
  const Flat K = *meet(l1, l2);
  std::vector<Flat> r1, r2;
  for (const auto& p : points_of(l1)) {
    if (!(p == K)) r1.push_back(p);
  }
  for (const auto& p : points_of(l2)) {
    if (!(p == K)) r2.push_back(p);
  }
  std::vector<PappusInput<Flat>> configs;
  for (const auto& A : r1)
    for (const auto& B : r1)
      for (const auto& C : r1)
        for (const auto& A2 : r2)
          for (const auto& B2 : r2)
            for (const auto& C2 : r2) {
              if (A == B || A == C || B == C || A2 == B2 || A2 == C2 || B2 == C2) continue;
              configs.push_back({A, B, C, A2, B2, C2});
            }
  REQUIRE(configs.size() == 3600);
  const auto bad = first_index(Exec::parallel, configs.size(), [&](std::uint64_t i) {
    const auto& in = configs[i];
    const Verdict v = check_pappus(g, in);
    const BrianchonInput<Flat> d{planar_dual(in.A),  planar_dual(in.B),  planar_dual(in.C),
                                 planar_dual(in.A2), planar_dual(in.B2), planar_dual(in.C2)};
    const Verdict w = check_pappus_brianchon(g, d);
    return !v.holds() || !w.holds();
  });
  CHECK_FALSE(bad.has_value());
}

TEST_CASE("Brianchon verdict equals Pappus verdict of the dual configuration") {
  for (const Ring& ring : {Ring::prime_field(7), Ring::rationals()}) {
    const CoordinatePlane g(standard_plane(ring));
    int checked = 0;
    for (std::uint64_t trial = 0; checked < 30; ++trial) {
      Rng rng = trial_rng(5, trial, Stream::brianchon);
      auto s = sample_brianchon(ring, rng, 3);
      if (!s.value) continue;
      ++checked;
      const auto& in = *s.value;
      const PappusInput<Flat> dual_in{planar_dual(in.a),  planar_dual(in.b),  planar_dual(in.c),
                                      planar_dual(in.a2), planar_dual(in.b2), planar_dual(in.c2)};
      const Verdict v = check_pappus_brianchon(g, in);
      CHECK(v.status == check_pappus(g, dual_in).status);
      CHECK(v.holds());
    }
  }
}

TEST_CASE("quaternionic Pappus failure lifts to a Gallucci failure") {
  const Ring h = Ring::quaternions();
  const CoordinatePlane g(standard_plane(h));
  std::optional<TransportSample> found;
  for (std::uint64_t trial = 0; trial < 500 && !found; ++trial) {
    Rng rng = trial_rng(1, trial, Stream::transport);
    auto s = sample_transport(h, rng, 4);
    if (s.value && check_pappus(g, s.value->pappus).fails()) found = s.value;
  }
  REQUIRE(found);
  const Verdict v = check_pappus(g, found->pappus);
  CHECK_FALSE(collinear_by_rank(flat(v, "X"), flat(v, "Y"), flat(v, "Z")));
  const GallucciInput lifted = gallucci_from_pappus_config(found->pappus, found->P, found->Q);
  const Verdict w = check_gallucci(lifted);
  REQUIRE(w.fails());
  CHECK(span_rank(std::array<Vec4, 4>{lifted.h.rows()[0], lifted.h.rows()[1], lifted.d.rows()[0],
                                      lifted.d.rows()[1]}) == 4);
  CHECK(pappus_from_gallucci_config(found->pappus, found->P, found->Q).fails());
}

TEST_CASE("Gallucci on the GF(3) regulus") {
  const Ring f3 = Ring::prime_field(3);
  const GallucciInput in{line(f3, {1, 0, 0, 0}, {0, 1, 0, 0}), line(f3, {0, 0, 1, 0}, {0, 0, 0, 1}),
                         line(f3, {1, 0, 1, 0}, {0, 1, 0, 1}), line(f3, {1, 0, 0, 0}, {0, 0, 1, 0}),
                         line(f3, {0, 1, 0, 0}, {0, 0, 0, 1}), line(f3, {1, 1, 0, 0}, {0, 0, 1, 1}),
                         line(f3, {1, 2, 0, 0}, {0, 0, 2, 1}), line(f3, {1, 0, 2, 0}, {0, 1, 0, 2})};
  const Verdict v = check_gallucci(in);
  REQUIRE(v.holds());
  CHECK(flat(v, "R") == pt(f3, 1, 2, 2, 1));
  // Oracle: the common points of h and d by enumeration.
  std::vector<Flat> common;
  for (const auto& p : points_of(in.h)) {
    if (incident(p, in.d)) common.push_back(p);
  }
  REQUIRE(common.size() == 1);
  CHECK(common[0] == pt(f3, 1, 2, 2, 1));

  auto broken = in;
  broken.h = line(f3, {1, 0, 0, 0}, {0, 0, 0, 1});
  CHECK_THROWS_AS(check_gallucci(broken), std::invalid_argument);
}

TEST_CASE("Gallucci holds on every admissible input of PG(3,2)") {
  const Ring f2 = Ring::prime_field(2);
  const auto lines = all_flats(f2, 2);
  REQUIRE(lines.size() == 35);
  std::size_t inputs = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (!are_skew(lines[i], lines[j])) continue;
      for (std::size_t k = j + 1; k < lines.size(); ++k) {
        if (!are_skew(lines[i], lines[k]) || !are_skew(lines[j], lines[k])) continue;
        const auto T = transversals_of_three_skew(lines[i], lines[j], lines[k], 10);
        REQUIRE(T.size() == 3);
        const auto D = transversals_of_three_skew(T[0], T[1], T[2], 10);
        for (const auto& h : T) {
          for (const auto& d : D) {
            const GallucciInput in{lines[i], lines[j], lines[k], T[0], T[1], T[2], h, d};
            CHECK(check_gallucci(in).holds());
            ++inputs;
          }
        }
      }
    }
  }
  CHECK(inputs > 0);
}

TEST_CASE("lifting Pappus to Gallucci preserves the verdict") {
  const Ring q = Ring::rationals();
  const CoordinatePlane g(standard_plane(q));
  const PappusInput<Flat> in{ppt(q, 0, 1, 1),  ppt(q, 1, 1, 1),  ppt(q, 2, 1, 1),
                             ppt(q, 0, -1, 1), ppt(q, 1, -1, 1), ppt(q, 2, -1, 1)};
  const Flat P = pt(q, 0, 0, 1, 1);
  const Flat X = flat(check_pappus(g, in), "X");
  const Flat Q = Flat::point(combine(std::array<Vec4, 2>{X.rows()[0], P.rows()[0]},
                                     std::array<Scalar, 2>{q.from_int(1), q.from_int(3)}));
  CHECK(check_gallucci(gallucci_from_pappus_config(in, P, Q)).holds());
  const Verdict v = pappus_from_gallucci_config(in, P, Q);
  REQUIRE(v.holds());
  CHECK(flat(v, "axis") == line(q, {1, 0, 0, 0}, {0, 0, 1, 0}));

  CHECK_THROWS_AS(gallucci_from_pappus_config(in, P, X), DegenerateConstruction);
  CHECK_THROWS_AS(gallucci_from_pappus_config(in, ppt(q, 5, 7, 1), Q), DegenerateConstruction);
  CHECK_THROWS_AS(pappus_from_gallucci_config(in, ppt(q, 5, 7, 1), Q), DegenerateConstruction);

  for (const Ring& ring : {Ring::prime_field(5), Ring::rationals(), Ring::quaternions()}) {
    CAPTURE(ring.tag());
    const CoordinatePlane plane(standard_plane(ring));
    int checked = 0;
    for (std::uint64_t trial = 0; checked < 25; ++trial) {
      Rng rng = trial_rng(9, trial, Stream::transport);
      auto s = sample_transport(ring, rng, 3);
      if (!s.value) continue;
      ++checked;
      const auto pv = check_pappus(plane, s.value->pappus).status;
      CHECK(check_gallucci(gallucci_from_pappus_config(s.value->pappus, s.value->P, s.value->Q)).status == pv);
      CHECK(pappus_from_gallucci_config(s.value->pappus, s.value->P, s.value->Q).status == pv);
    }
  }
}
