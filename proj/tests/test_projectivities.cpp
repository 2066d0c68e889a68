#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "incidence/configurations.hpp"
#include "incidence/generators.hpp"
#include "incidence/projectivities.hpp"
#include "test_support.hpp"

using namespace incidence;
using incidence::testing::line;
using incidence::testing::ppt;
using incidence::testing::pt;

namespace {

Quadruple random_quadruple(const Ring& r, Rng& rng) {
  for (;;) {
    Quadruple q{random_plane_point(r, rng, 4), random_plane_point(r, rng, 4), random_plane_point(r, rng, 4),
                random_plane_point(r, rng, 4)};
    if (general_position(q)) return q;
  }
}

/// Oracle for a central-axial collineation of the plane x4 = 0 over a
/// commutative field: x -> x + lambda * phi(x) * o, where phi vanishes on
/// the axis and lambda is fixed by the sample pair.
struct HomologyMatrix {
  std::array<Scalar, 3> o, phi;
  Scalar lambda;

  static std::array<Scalar, 3> xyz(const Flat& p) { return {p.rows()[0][0], p.rows()[0][1], p.rows()[0][2]}; }

  static std::array<Scalar, 3> cross(const Flat& axis) {
    const auto u = xyz(Flat::point(axis.rows()[0])), v = xyz(Flat::point(axis.rows()[1]));
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  }

  explicit HomologyMatrix(const CentralAxialCollineation& k)
      : o(xyz(k.center)), phi(cross(k.axis)), lambda(o[0].ring().zero()) {
    const auto a = xyz(k.A), a2 = xyz(k.A2);
    // Solve a2 = alpha a + beta o on two coordinates with nonzero determinant.
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const Scalar det = a[i] * o[j] - a[j] * o[i];
        if (det.is_zero()) continue;
        const Scalar inv = det.inverse();
        const Scalar alpha = (a2[i] * o[j] - a2[j] * o[i]) * inv;
        const Scalar beta = (a[i] * a2[j] - a[j] * a2[i]) * inv;
        lambda = beta * (alpha * dot(phi, a)).inverse();
        return;
      }
    FAIL("degenerate oracle input");
  }

  static Scalar dot(const std::array<Scalar, 3>& f, const std::array<Scalar, 3>& x) {
    return f[0] * x[0] + f[1] * x[1] + f[2] * x[2];
  }

  Flat operator()(const Flat& p) const {
    const auto x = xyz(p);
    const Scalar s = lambda * dot(phi, x);
    return Flat::point(Vec4{x[0] + s * o[0], x[1] + s * o[1], x[2] + s * o[2], x[0].ring().zero()});
  }
};

std::optional<GallucciInput> failing_quaternion_gallucci(std::uint64_t seed) {
  const Ring H = Ring::quaternions();
  for (std::uint64_t t = 0; t < 10000; ++t) {
    Rng rng = trial_rng(seed, t, Stream::gallucci);
    auto s = sample_gallucci(H, rng, 4);
    if (s.value && check_gallucci(*s.value).fails()) return s.value;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("central perspectivity") {
  const Ring r = Ring::prime_field(3);
  const Flat source = line(r, {1, 0, 0, 0}, {0, 0, 1, 0});  // y = 0
  const Flat target = line(r, {0, 1, 0, 0}, {0, 0, 1, 0});  // x = 0
  const auto p = Perspectivity::make(ppt(r, 1, 1, 1), source, target);
  // (1,1,1) - (1,0,1) = (0,1,0) lies on x = 0.
  const Flat image = apply_perspectivity(p, ppt(r, 1, 0, 1));
  CHECK(image == ppt(r, 0, 1, 0));
  CHECK(collinear({p.center, ppt(r, 1, 0, 1), image}));
  CHECK(apply_perspectivity(p, ppt(r, 0, 0, 1)) == ppt(r, 0, 0, 1));
  CHECK_THROWS_AS(apply_perspectivity(p, ppt(r, 0, 1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(Perspectivity::make(ppt(r, 0, 0, 1), source, target), std::invalid_argument);
  CHECK_THROWS_AS(Perspectivity::make(pt(r, 0, 0, 0, 1), source, target), std::invalid_argument);
  CHECK_THROWS_AS(Perspectivity::make(ppt(r, 1, 1, 1), source, source), std::invalid_argument);

  for (std::uint32_t q : {3u, 5u}) {
    const Ring f = Ring::prime_field(q);
    Rng rng(q);
    for (int trial = 0; trial < 20; ++trial) {
      auto chain = random_chain(testing::line(f, {1, 0, 0, 0}, {0, 1, 0, 0}), 1, rng, 4);
      if (!chain) continue;
      const auto& link = chain->links[0];
      std::vector<Flat> images;
      for (const auto& X : points_of(link.source)) {
        const Flat Y = apply_perspectivity(link, X);
        CHECK(incident(Y, link.target));
        CHECK(apply_perspectivity(link.inverse(), Y) == X);
        CHECK(std::find(images.begin(), images.end(), Y) == images.end());
        images.push_back(Y);
      }
    }
  }
}

TEST_CASE("axial perspectivity") {
  const Ring r = Ring::prime_field(3);
  const auto ap = AxialPerspectivity::make(line(r, {1, 0, 1, 0}, {0, 1, 0, 1}), line(r, {1, 0, 0, 0}, {0, 1, 0, 0}),
                                           line(r, {0, 0, 1, 0}, {0, 0, 0, 1}));
  CHECK(apply_axial(ap, pt(r, 1, 0, 0, 0)) == pt(r, 0, 0, 1, 0));
  CHECK(apply_axial(ap, pt(r, 0, 1, 0, 0)) == pt(r, 0, 0, 0, 1));
  for (const auto& A : points_of(ap.source)) {
    const Flat B = apply_axial(ap, A);
    CHECK(meet(join(A, B), ap.axis).has_value());
  }
  CHECK_THROWS_AS(apply_axial(ap, pt(r, 0, 0, 1, 0)), std::invalid_argument);
}

TEST_CASE("axial maps through two transversals coincide over fields") {
  for (std::uint32_t q : {2u, 3u}) {
    const Ring f = Ring::prime_field(q);
    int checked = 0;
    for (std::uint64_t t = 0; t < 400 && checked < 20; ++t) {
      Rng rng = trial_rng(11, t, Stream::gallucci);
      auto s = sample_gallucci(f, rng, 4);
      if (!s.value) continue;
      const auto& g = *s.value;
      if (!are_skew(g.d, g.a) || !are_skew(g.d, g.b)) continue;
      const auto pc = AxialPerspectivity::make(g.c, g.a, g.b);
      const auto pd = AxialPerspectivity::make(g.d, g.a, g.b);
      for (const auto& A : points_of(g.a)) CHECK(apply_axial(pc, A) == apply_axial(pd, A));
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("the quaternion Gallucci witness breaks the fundamental theorem") {
  const auto g = failing_quaternion_gallucci(3);
  REQUIRE(g);
  const Projectivity pc = AxialPerspectivity::make(g->c, g->a, g->b);
  const Projectivity pd = AxialPerspectivity::make(g->d, g->a, g->b);
  auto pair_on = [&](const Flat& tr) { return std::pair{*meet(g->a, tr), *meet(g->b, tr)}; };
  const std::array<std::pair<Flat, Flat>, 3> pairs{pair_on(g->e), pair_on(g->f), pair_on(g->g)};
  const Flat ah = *meet(g->a, g->h);
  CHECK_FALSE(apply(pc, ah) == apply(pd, ah));
  FtpOptions o;
  o.extra = {ah};
  CHECK_FALSE(ftp_check(g->a, g->b, pairs, pc, pd, o));
}

TEST_CASE("chain reduction") {
  const Ring f = Ring::prime_field(5);
  const Flat s = line(f, {1, 0, 0, 0}, {0, 1, 0, 0});

  SUBCASE("a single link is already reduced") {
    Rng rng(1);
    auto c = random_chain(s, 1, rng, 4);
    REQUIRE(c);
    const auto r = reduce_chain(*c);
    REQUIRE(std::holds_alternative<PerspectivityChain>(r));
    CHECK(std::get<PerspectivityChain>(r).size() == 1);
  }

  SUBCASE("concurrent lines merge with a center on OO'") {
    const Flat a1 = s, a2 = line(f, {1, 0, 0, 0}, {0, 0, 1, 0}), a3 = line(f, {1, 0, 0, 0}, {0, 1, 1, 0});
    const auto first = Perspectivity::make(ppt(f, 1, 1, 2), a1, a2);
    const auto second = Perspectivity::make(ppt(f, 1, 2, 1), a2, a3);
    const PerspectivityChain chain{{first, second}};
    const auto r = reduce_chain(chain);
    REQUIRE(std::holds_alternative<PerspectivityChain>(r));
    const auto& red = std::get<PerspectivityChain>(r);
    REQUIRE(red.size() == 1);
    CHECK(incident(red.links[0].center, join(first.center, second.center)));
    for (const auto& X : points_of(s)) CHECK(apply(r, X) == apply_chain(chain, X));
  }

  SUBCASE("random chains reduce with pointwise agreement") {
    int skew = 0, coplanar = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      Rng rng = trial_rng(5, t, Stream::chain);
      auto c = random_chain(s, 2 + t % 5, rng, 4);
      if (!c) continue;
      const auto r = reduce_chain(*c);
      if (std::holds_alternative<AxialPerspectivity>(r)) {
        ++skew;
        CHECK(are_skew(c->source(), c->target()));
      } else {
        ++coplanar;
        CHECK(std::get<PerspectivityChain>(r).size() <= 2);
        CHECK_FALSE(are_skew(c->source(), c->target()));
      }
      for (const auto& X : points_of(s)) CHECK(apply(r, X) == apply_chain(*c, X));
    }
    CHECK(skew > 0);
    CHECK(coplanar > 0);
  }

  SUBCASE("rational chains agree on sampled points") {
    const Ring q = Ring::rationals();
    const Flat sq = line(q, {1, 0, 0, 0}, {0, 1, 0, 0});
    for (std::uint64_t t = 0; t < 10; ++t) {
      Rng rng = trial_rng(6, t, Stream::chain);
      auto c = random_chain(sq, 4, rng, 3);
      if (!c) continue;
      const auto r = reduce_chain(*c);
      const auto pts = comparison_points(sq, t, 100);
      CHECK_FALSE(first_disagreement(r, Projectivity(*c), pts).has_value());
    }
  }

  SUBCASE("closed and broken chains are rejected") {
    Rng rng(3);
    auto c = random_chain(s, 2, rng, 4);
    REQUIRE(c);
    auto back = c->links;
    back.push_back(Perspectivity::make(back[1].center, back[1].target, back[1].source));
    back.push_back(Perspectivity::make(back[0].center, back[0].target, back[0].source));
    CHECK_THROWS_AS(reduce_chain(PerspectivityChain{back}), std::invalid_argument);
    std::vector<Perspectivity> broken{c->links[1], c->links[0]};
    CHECK_THROWS_AS(reduce_chain(PerspectivityChain{broken}), std::invalid_argument);
  }
}

TEST_CASE("fundamental theorem over GF(5)") {
  const Ring f = Ring::prime_field(5);
  const Flat s = line(f, {1, 0, 0, 0}, {0, 1, 0, 0});
  int checked = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Rng rng = trial_rng(9, t, Stream::ftp);
    auto c = random_chain(s, 1 + t % 4, rng, 4);
    if (!c) continue;
    const auto pts = points_of(s);
    const std::array<Flat, 3> P{pts[0], pts[2], pts[4]};
    const std::array<Flat, 3> Q{apply_chain(*c, P[0]), apply_chain(*c, P[1]), apply_chain(*c, P[2])};
    std::optional<PerspectivityChain> d;
    for (int k = 0; k < 50 && !d; ++k) d = chain_through_three(s, c->target(), P, Q, rng, 4);
    REQUIRE(d);
    std::array<std::pair<Flat, Flat>, 3> pairs{{{P[0], Q[0]}, {P[1], Q[1]}, {P[2], Q[2]}}};
    CHECK(ftp_check(s, c->target(), pairs, *c, *d));
    ++checked;
  }
  CHECK(checked > 150);

  // A chain fixing three points of a line fixes the line pointwise.
  Rng rng(2);
  auto out = random_chain(s, 2, rng, 4);
  REQUIRE(out);
  const auto pts = points_of(s);
  const std::array<Flat, 3> P{pts[1], pts[3], pts[5]};
  const std::array<Flat, 3> Q{apply_chain(*out, P[0]), apply_chain(*out, P[1]), apply_chain(*out, P[2])};
  std::optional<PerspectivityChain> back;
  for (int k = 0; k < 50 && !back; ++k) back = chain_through_three(out->target(), s, Q, P, rng, 4);
  REQUIRE(back);
  auto links = out->links;
  links.insert(links.end(), back->links.begin(), back->links.end());
  const auto loop = PerspectivityChain::make(links);
  for (const auto& X : pts) CHECK(apply_chain(loop, X) == X);

  // Wrong pairs are a precondition error.
  std::array<std::pair<Flat, Flat>, 3> bad{{{P[0], Q[1]}, {P[1], Q[1]}, {P[2], Q[2]}}};
  CHECK_THROWS_AS(ftp_check(s, out->target(), bad, *out, *out), std::invalid_argument);
}

TEST_CASE("central-axial collineation") {
  const Ring q = Ring::rationals();
  const auto k = CentralAxialCollineation::make(ppt(q, 0, 0, 1), line(q, {1, 0, 0, 0}, {0, 1, 0, 0}), ppt(q, 1, 0, 1),
                                                ppt(q, 1, 0, 2));
  CHECK(apply_ca(k, ppt(q, 1, 1, 1)) == ppt(q, 1, 1, 2));
  CHECK(apply_ca(k, ppt(q, 3, -2, 0)) == ppt(q, 3, -2, 0));
  CHECK(apply_ca(k, ppt(q, 0, 0, 1)) == ppt(q, 0, 0, 1));
  CHECK(apply_ca(k, ppt(q, 2, 0, 1)) == HomologyMatrix(k)(ppt(q, 2, 0, 1)));
  CHECK_THROWS_AS(apply_ca(k, pt(q, 0, 0, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(CentralAxialCollineation::make(ppt(q, 0, 0, 1), line(q, {1, 0, 0, 0}, {0, 1, 0, 0}), ppt(q, 1, 0, 1),
                                                 ppt(q, 1, 1, 2)),
                  std::invalid_argument);

  // Exhaustive over GF(3): every collineation of the plane x4 = 0.
  const Ring f = Ring::prime_field(3);
  const Flat plane = standard_plane(f);
  const auto pts = points_of(plane);
  std::vector<Flat> lines;
  for (const auto& l : testing::all_flats(f, 2)) {
    if (incident(l, plane)) lines.push_back(l);
  }
  REQUIRE(lines.size() == 13);
  std::size_t count = 0;
  for (const auto& O : pts)
    for (const auto& axis : lines)
      for (const auto& A : pts) {
        if (A == O || incident(A, axis)) continue;
        for (const auto& A2 : points_of(join(O, A))) {
          if (A2 == O || incident(A2, axis)) continue;
          const auto c = CentralAxialCollineation::make(O, axis, A, A2);
          const HomologyMatrix oracle(c);
          for (const auto& X : pts) {
            const Flat Y = apply_ca(c, X);
            if (incident(X, axis)) CHECK(Y == X);
            if (!(X == O)) CHECK(incident(Y, join(O, X)));
            CHECK(Y == oracle(X));
          }
          ++count;
        }
      }
  CHECK(count > 0);
}

TEST_CASE("four-point decomposition") {
  SUBCASE("identical quadruples") {
    const Ring f = Ring::prime_field(5);
    const Quadruple frame{ppt(f, 1, 0, 0), ppt(f, 0, 1, 0), ppt(f, 0, 0, 1), ppt(f, 1, 1, 1)};
    CHECK(decompose_four_points(frame, frame).empty());
    CHECK(uniqueness_check(frame, frame, {}, {}));
  }

  SUBCASE("frame to permuted frame") {
    const Ring f = Ring::prime_field(5);
    const Quadruple frame{ppt(f, 1, 0, 0), ppt(f, 0, 1, 0), ppt(f, 0, 0, 1), ppt(f, 1, 1, 1)};
    const Quadruple perm{frame[2], frame[0], frame[3], frame[1]};
    const auto ks = decompose_four_points(frame, perm);
    CHECK(ks.size() <= 4);
    for (int i = 0; i < 4; ++i) CHECK(apply_all(ks, frame[i]) == perm[i]);
  }

  SUBCASE("same line AB starts with a preliminary step") {
    const Ring q = Ring::rationals();
    const Quadruple from{ppt(q, 1, 0, 0), ppt(q, 0, 1, 0), ppt(q, 0, 0, 1), ppt(q, 1, 1, 1)};
    const Quadruple to{ppt(q, 1, 1, 0), ppt(q, 1, -1, 0), ppt(q, 2, 3, 1), ppt(q, -1, 2, 5)};
    REQUIRE(join(from[0], from[1]) == join(to[0], to[1]));
    const auto ks = decompose_four_points(from, to);
    CHECK(ks.size() == 4);
    CHECK_FALSE(join(apply_ca(ks[0], from[0]), apply_ca(ks[0], from[1])) == join(from[0], from[1]));
    for (int i = 0; i < 4; ++i) CHECK(apply_all(ks, from[i]) == to[i]);
  }

  SUBCASE("random quadruples over GF(5) and GF(7)") {
    for (std::uint32_t p : {5u, 7u}) {
      const Ring f = Ring::prime_field(p);
      for (std::uint64_t t = 0; t < 60; ++t) {
        Rng rng = trial_rng(p, t, Stream::quadruple);
        const Quadruple from = random_quadruple(f, rng), to = random_quadruple(f, rng);
        const auto ks = decompose_four_points(from, to);
        CHECK(ks.size() <= 4);
        for (int i = 0; i < 4; ++i) CHECK(apply_all(ks, from[i]) == to[i]);
      }
    }
  }

  SUBCASE("two decompositions agree on the whole plane") {
    for (std::uint32_t p : {3u, 5u}) {
      const Ring f = Ring::prime_field(p);
      for (std::uint64_t t = 0; t < 30; ++t) {
        Rng rng = trial_rng(p + 100, t, Stream::quadruple);
        const Quadruple from = random_quadruple(f, rng), to = random_quadruple(f, rng);
        const auto first = decompose_four_points(from, to);
        DecomposeOptions o;
        o.force_preliminary = true;
        o.sweep_start = t;
        const auto second = decompose_four_points(from, to, o);
        CHECK(uniqueness_check(from, to, first, second));
      }
    }
  }

  SUBCASE("rejected inputs") {
    const Ring f = Ring::prime_field(5);
    const Quadruple frame{ppt(f, 1, 0, 0), ppt(f, 0, 1, 0), ppt(f, 0, 0, 1), ppt(f, 1, 1, 1)};
    const Quadruple flat{ppt(f, 1, 0, 0), ppt(f, 0, 1, 0), ppt(f, 1, 1, 0), ppt(f, 1, 1, 1)};
    CHECK_THROWS_AS(decompose_four_points(frame, flat), std::invalid_argument);
    const Quadruple off{ppt(f, 1, 0, 0), ppt(f, 0, 1, 0), ppt(f, 0, 0, 1), pt(f, 1, 1, 1, 1)};
    CHECK_THROWS_AS(decompose_four_points(frame, off), std::invalid_argument);
    const Quadruple perm{frame[1], frame[0], frame[2], frame[3]};
    const auto ks = decompose_four_points(frame, perm);
    CHECK_THROWS_AS(uniqueness_check(frame, frame, ks, {}), std::invalid_argument);
  }
}
