#include "incidence/projectivities.hpp"

#include <functional>
#include <stdexcept>

#include "incidence/configurations.hpp"

namespace incidence {
namespace {

Flat join_points(const Flat& p, const Flat& q, const char* what) {
  if (p == q) throw DegenerateConstruction(std::string(what) + ": coincident points");
  return join(p, q);
}

Flat meet_lines(const Flat& l, const Flat& m, const char* what) {
  auto x = meet(l, m);
  if (!x || !x->is_point()) throw DegenerateConstruction(std::string(what) + ": lines do not meet in a point");
  return *x;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

/// Common point of three lines, if any.
std::optional<Flat> common_point(const Flat& a, const Flat& b, const Flat& c) {
  if (a == b) return std::nullopt;
  auto k = meet(a, b);
  if (!k || !k->is_point() || !incident(*k, c)) return std::nullopt;
  return k;
}

/// Lines through K inside the plane, in sweep order.
std::vector<Flat> pencil(const Flat& K, const Flat& plane, std::size_t limit = 64) {
  std::vector<Flat> out;
  for (const auto& X : sweep_points(plane, limit)) {
    if (X == K) continue;
    Flat l = join(K, X);
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

/// Two points of `line` other than `avoid`.
std::array<Flat, 2> two_points_off(const Flat& line, const Flat& avoid) {
  std::vector<Flat> pts;
  for (auto& p : sweep_points(line, 4)) {
    if (!(p == avoid)) pts.push_back(std::move(p));
    if (pts.size() == 2) break;
  }
  if (pts.size() < 2) throw DegenerateConstruction("line has too few points");
  return {pts[0], pts[1]};
}

/// Single perspectivity equal to first-then-second when their three lines
/// are concurrent and the outer two differ. The center lies on the line of
/// the two old centers.
Perspectivity merge(const Perspectivity& first, const Perspectivity& second) {
  const Flat &a = first.source, &a2 = second.target;
  if (a == a2) throw DegenerateConstruction("merge: end lines coincide");
  auto K = common_point(a, first.target, a2);
  if (!K) throw DegenerateConstruction("merge: lines are not concurrent");
  const auto [X, Y] = two_points_off(a, *K);
  const Flat X2 = apply_perspectivity(second, apply_perspectivity(first, X));
  const Flat Y2 = apply_perspectivity(second, apply_perspectivity(first, Y));
  const Flat center = meet_lines(join_points(X, X2, "merge"), join_points(Y, Y2, "merge"), "merge");
  try {
    return Perspectivity::make(center, a, a2);
  } catch (const DegenerateConstruction&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DegenerateConstruction(std::string("merge: ") + e.what());
  }
}

using Triple = std::array<Perspectivity, 3>;
using Pair = std::array<Perspectivity, 2>;

/// Reroutes the middle link through b = (a1∩a2)(a3∩a4) and merges twice.
std::optional<Pair> reroute(const Triple& t) {
  const Flat &a1 = t[0].source, &a2 = t[1].source, &a3 = t[2].source, &a4 = t[2].target;
  const Flat& O2 = t[1].center;
  try {
    const Flat K1 = meet_lines(a1, a2, "reroute");
    const Flat K3 = meet_lines(a3, a4, "reroute");
    if (K1 == K3) return std::nullopt;
    const Flat b = join(K1, K3);
    if (b == a1 || b == a2 || b == a3 || b == a4 || incident(O2, b)) return std::nullopt;
    const Perspectivity to_b = Perspectivity::make(O2, a2, b);
    const Perspectivity from_b = Perspectivity::make(O2, b, a3);
    return Pair{merge(t[0], to_b), merge(from_b, t[2])};
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

/// Replaces three links whose end lines are distinct and coplanar by one
/// or two links built from point images, checked on every compared point.
/// Used only when every rerouting line of the sweep is degenerate, which
/// happens when all four lines pass through one point.
std::optional<std::vector<Perspectivity>> rebuild(const Triple& t) {
  const Flat &a = t[0].source, &target = t[2].target;
  if (a == target || are_skew(a, target)) return std::nullopt;
  const PerspectivityChain original{{t[0], t[1], t[2]}};
  const auto pts = comparison_points(a, 0, 32);
  auto verified = [&](std::vector<Perspectivity> links) -> std::optional<std::vector<Perspectivity>> {
    const Projectivity candidate = PerspectivityChain{links};
    if (first_disagreement(candidate, original, pts, Exec::serial)) return std::nullopt;
    return links;
  };
  const Flat K = *meet(a, target);
  try {
    if (apply_chain(original, K) == K) {
      const auto [X, Y] = two_points_off(a, K);
      const Flat center = meet_lines(join_points(X, apply_chain(original, X), "rebuild"),
                                     join_points(Y, apply_chain(original, Y), "rebuild"), "rebuild");
      return verified({Perspectivity::make(center, a, target)});
    }
  } catch (const std::invalid_argument&) {
  }
  // a -> u through C1 on P1Q1 sends P1 to Q1 on u; u -> target through C2
  // fixes Q1 and sends the images of P2, P3 to Q2, Q3.
  // The first point must not be sent to K, or P1Q1 would be the line a.
  std::vector<Flat> P, Q;
  for (const auto& x : sweep_points(a, 8)) {
    if (x == K || P.size() == 3) continue;
    Flat y = apply_chain(original, x);
    if (P.empty() && y == K) continue;
    P.push_back(x);
    Q.push_back(std::move(y));
  }
  if (P.size() < 3) return std::nullopt;
  const Flat plane = join(a, target);
  std::vector<Flat> centers = P[0] == Q[0] ? sweep_points(plane, 24) : sweep_points(join(P[0], Q[0]), 8);
  for (const auto& u : pencil(Q[0], plane)) {
    if (u == a || u == target) continue;
    for (const auto& C1 : centers) {
      try {
        const Perspectivity first = Perspectivity::make(C1, a, u);
        const Flat U2 = apply_perspectivity(first, P[1]), U3 = apply_perspectivity(first, P[2]);
        const Flat C2 = meet_lines(join_points(U2, Q[1], "rebuild"), join_points(U3, Q[2], "rebuild"), "rebuild");
        if (auto r = verified({first, Perspectivity::make(C2, u, target)})) return r;
      } catch (const std::invalid_argument&) {
      }
    }
  }
  return std::nullopt;
}

/// Shortens three consecutive links. When the direct reroute is
/// degenerate, the third line is first replaced by another line through
/// a2∩a3 in the plane of the last link, chosen by sweep; failing that the
/// window is rebuilt from point images.
std::optional<std::vector<Perspectivity>> shorten(const Triple& t) {
  if (auto r = reroute(t)) return std::vector<Perspectivity>(r->begin(), r->end());
  const Flat &a2 = t[1].source, &a3 = t[2].source, &a4 = t[2].target;
  const Flat& O3 = t[2].center;
  const Flat K2 = meet_lines(a2, a3, "shorten");
  for (const auto& c : pencil(K2, t[2].plane())) {
    if (c == a2 || c == a3 || c == a4 || incident(O3, c)) continue;
    try {
      const Perspectivity second = merge(t[1], Perspectivity::make(O3, a3, c));
      const Perspectivity third = Perspectivity::make(O3, c, a4);
      if (auto r = reroute({t[0], second, third})) return std::vector<Perspectivity>(r->begin(), r->end());
    } catch (const std::invalid_argument&) {
    }
  }
  return rebuild(t);
}

template <class T>
std::vector<T> splice(const std::vector<T>& v, std::size_t at, std::size_t erase, std::span<const T> insert) {
  std::vector<T> out(v.begin(), v.begin() + at);
  out.insert(out.end(), insert.begin(), insert.end());
  out.insert(out.end(), v.begin() + at + erase, v.end());
  return out;
}

}  // namespace

// ---- maps ---------------------------------------------------------------------

Perspectivity Perspectivity::make(Flat center, Flat source, Flat target) {
  require(center.is_point() && source.is_line() && target.is_line(), "perspectivity needs a point and two lines");
  require(!(source == target), "perspectivity source and target coincide");
  auto k = meet(source, target);
  require(k && k->is_point(), "perspectivity lines are not coplanar");
  require(!incident(center, source) && !incident(center, target), "perspectivity center lies on a line");
  require(incident(center, join(source, target)), "perspectivity center is off the plane of its lines");
  return Perspectivity{std::move(center), std::move(source), std::move(target)};
}

AxialPerspectivity AxialPerspectivity::make(Flat axis, Flat source, Flat target) {
  require(axis.is_line() && source.is_line() && target.is_line(), "axial perspectivity needs three lines");
  require(are_skew(axis, source) && are_skew(axis, target) && are_skew(source, target),
          "axial perspectivity lines are not pairwise skew");
  return AxialPerspectivity{std::move(axis), std::move(source), std::move(target)};
}

PerspectivityChain PerspectivityChain::make(std::vector<Perspectivity> links) {
  require(!links.empty(), "empty perspectivity chain");
  for (std::size_t i = 0; i + 1 < links.size(); ++i) {
    require(links[i].target == links[i + 1].source, "chain links " + std::to_string(i) + " and " +
                                                         std::to_string(i + 1) + " are not composable");
  }
  return PerspectivityChain{std::move(links)};
}

Flat apply_perspectivity(const Perspectivity& p, const Flat& X) {
  require(X.is_point() && incident(X, p.source), "point " + X.str() + " is not on the perspectivity source");
  return *meet(join(p.center, X), p.target);
}

Flat apply_axial(const AxialPerspectivity& ap, const Flat& A) {
  require(A.is_point() && incident(A, ap.source), "point " + A.str() + " is not on the axial source");
  return *meet(join(ap.axis, A), ap.target);
}

Flat apply_chain(const PerspectivityChain& chain, const Flat& X) {
  Flat Y = X;
  for (const auto& link : chain.links) Y = apply_perspectivity(link, Y);
  return Y;
}

Flat apply(const Projectivity& p, const Flat& X) {
  return std::visit(
      [&](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, PerspectivityChain>) {
          return apply_chain(m, X);
        } else {
          return apply_axial(m, X);
        }
      },
      p);
}

const Flat& source_of(const Projectivity& p) {
  if (const auto* c = std::get_if<PerspectivityChain>(&p)) return c->source();
  return std::get<AxialPerspectivity>(p).source;
}

const Flat& target_of(const Projectivity& p) {
  if (const auto* c = std::get_if<PerspectivityChain>(&p)) return c->target();
  return std::get<AxialPerspectivity>(p).target;
}

// ---- reduction ----------------------------------------------------------------

Projectivity reduce_chain(const PerspectivityChain& chain) {
  std::vector<Perspectivity> links = PerspectivityChain::make(chain.links).links;
  if (links.size() >= 3 && chain.source() == chain.target()) {
    throw std::invalid_argument("chain returns to its source line; it does not reduce to two perspectivities");
  }
  auto merge_concurrent = [&]() {
    for (std::size_t i = 0; i + 1 < links.size(); ++i) {
      const Flat &a = links[i].source, &a2 = links[i + 1].target;
      if (a == a2 || !common_point(a, links[i].target, a2)) continue;
      try {
        const Perspectivity m = merge(links[i], links[i + 1]);
        links = splice(links, i, 2, std::span<const Perspectivity>(&m, 1));
        return true;
      } catch (const DegenerateConstruction&) {
      }
    }
    return false;
  };
  while (links.size() > 2) {
    if (merge_concurrent()) continue;
    bool progress = false;
    for (std::size_t i = 0; !progress && i + 2 < links.size(); ++i) {
      if (auto pair = shorten({links[i], links[i + 1], links[i + 2]})) {
        links = splice(links, i, 3, std::span<const Perspectivity>(*pair));
        progress = true;
      }
    }
    if (!progress) throw DegenerateConstruction("chain reduction found no applicable step");
  }
  if (links.size() == 2) merge_concurrent();
  if (links.size() == 2 && are_skew(links.front().source, links.back().target)) {
    return AxialPerspectivity::make(join(links[0].center, links[1].center), links[0].source, links[1].target);
  }
  return PerspectivityChain{std::move(links)};
}

// ---- comparison ---------------------------------------------------------------

std::vector<Flat> comparison_points(const Flat& line, std::uint64_t seed, std::size_t samples,
                                    std::span<const Flat> extra) {
  std::vector<Flat> pts;
  if (line.ring().is_finite()) {
    pts = points_of(line);
  } else {
    pts = sweep_points(line, 16);
    for (std::size_t k = 0; k < samples; ++k) {
      Rng rng = trial_rng(seed, k, Stream::ftp);
      pts.push_back(random_point_in(line, rng, 4));
    }
  }
  pts.insert(pts.end(), extra.begin(), extra.end());
  return pts;
}

std::optional<Flat> first_disagreement(const Projectivity& p1, const Projectivity& p2, std::span<const Flat> points,
                                       Exec exec) {
  auto hit = first_index(exec, points.size(), [&](std::uint64_t i) {
    return !(apply(p1, points[i]) == apply(p2, points[i]));
  });
  if (!hit) return std::nullopt;
  return points[*hit];
}

bool ftp_check(const Flat& source, const Flat& target, const std::array<std::pair<Flat, Flat>, 3>& pairs,
               const Projectivity& p1, const Projectivity& p2, const FtpOptions& options) {
  require(source.is_line() && target.is_line(), "ftp_check needs two lines");
  for (const auto* p : {&p1, &p2}) {
    require(source_of(*p) == source && target_of(*p) == target, "projectivity does not run between the stated lines");
  }
  for (const auto& [X, Y] : pairs) {
    require(X.is_point() && incident(X, source), "pair point " + X.str() + " is not on the source");
    require(Y.is_point() && incident(Y, target), "pair point " + Y.str() + " is not on the target");
    require(apply(p1, X) == Y && apply(p2, X) == Y, "a projectivity does not send " + X.str() + " to " + Y.str());
  }
  for (const auto& X : options.extra) require(X.is_point() && incident(X, source), "extra point is not on the source");
  const auto pts = comparison_points(source, options.seed, options.samples, options.extra);
  return !first_disagreement(p1, p2, pts, options.exec);
}

// ---- chain builders -----------------------------------------------------------

std::optional<PerspectivityChain> random_chain(const Flat& source, std::size_t length, Rng& rng, int height) {
  std::vector<Perspectivity> links;
  Flat a = source;
  try {
    for (std::size_t i = 0; i < length; ++i) {
      const Flat K = random_point_in(a, rng, height);
      const Flat R = random_point(a.ring(), rng, height);
      if (incident(R, a)) return std::nullopt;
      const Flat next = join(K, R);
      auto O = random_point_avoiding(join(a, next), {&a, &next}, rng, height);
      if (!O) return std::nullopt;
      links.push_back(Perspectivity::make(*O, a, next));
      a = next;
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (links.empty() || a == source) return std::nullopt;
  return PerspectivityChain{std::move(links)};
}

std::optional<PerspectivityChain> chain_through_three(const Flat& source, const Flat& target,
                                                      const std::array<Flat, 3>& points,
                                                      const std::array<Flat, 3>& images, Rng& rng, int height) {
  require(!(source == target), "chain_through_three needs distinct lines");
  for (int i = 0; i < 3; ++i) {
    require(incident(points[i], source) && incident(images[i], target), "prescribed points are off their lines");
  }
  try {
    // Onto a line w meeting the target.
    const Flat X = random_point_in(source, rng, height);
    const Flat Y = random_point_in(target, rng, height);
    if (X == Y) return std::nullopt;
    const Flat w = join(X, Y);
    if (w == source || w == target) return std::nullopt;
    auto O = random_point_avoiding(join(source, w), {&source, &w}, rng, height);
    if (!O) return std::nullopt;
    const Perspectivity first = Perspectivity::make(*O, source, w);
    std::array<Flat, 3> W{apply_perspectivity(first, points[0]), apply_perspectivity(first, points[1]),
                          apply_perspectivity(first, points[2])};

    // w -> u through C1 on W1Q1 fixes the image of the first point at Q1;
    // u -> target through C2 then fixes Q1 and sends U2, U3 to Q2, Q3.
    const Flat plane = join(w, target);
    const Flat& Q1 = images[0];
    const Flat R = random_point_in(plane, rng, height);
    if (R == Q1) return std::nullopt;
    const Flat u = join(Q1, R);
    Flat C1 = W[0] == Q1 ? random_point_in(plane, rng, height) : random_point_in(join(W[0], Q1), rng, height);
    const Perspectivity second = Perspectivity::make(C1, w, u);
    const Flat U2 = apply_perspectivity(second, W[1]);
    const Flat U3 = apply_perspectivity(second, W[2]);
    const Flat C2 = meet_lines(join_points(U2, images[1], "builder"), join_points(U3, images[2], "builder"), "builder");
    PerspectivityChain chain{{first, second, Perspectivity::make(C2, u, target)}};
    for (int i = 0; i < 3; ++i) {
      if (!(apply_chain(chain, points[i]) == images[i])) return std::nullopt;
    }
    return chain;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// ---- central-axial collineations -----------------------------------------------

CentralAxialCollineation CentralAxialCollineation::make(Flat center, Flat axis, Flat A, Flat A2) {
  require(center.is_point() && axis.is_line() && A.is_point() && A2.is_point(),
          "collineation needs a center, an axis line and two points");
  require(!incident(A, axis) && !incident(A2, axis), "collineation sample pair lies on the axis");
  require(!(A == center) && !(A2 == center), "collineation sample pair contains the center");
  const Flat plane = join(axis, A);
  require(incident(center, plane) && incident(A2, plane), "collineation data are not coplanar");
  require(incident(A2, join(center, A)), "collineation sample pair is not collinear with the center");
  return CentralAxialCollineation{std::move(center), std::move(axis), std::move(A), std::move(A2)};
}

namespace {

Flat ca_generic(const CentralAxialCollineation& k, const Flat& X, const Flat& P, const Flat& P2) {
  const Flat M = *meet(join(P, X), k.axis);
  return *meet(join(k.center, X), join(P2, M));
}

}  // namespace

Flat apply_ca(const CentralAxialCollineation& k, const Flat& X) {
  const Flat plane = k.plane();
  require(X.is_point() && incident(X, plane), "point " + X.str() + " is not in the collineation's plane");
  if (X == k.center || incident(X, k.axis) || k.A == k.A2) return X;
  const Flat OA = join(k.center, k.A);
  if (!incident(X, OA)) return ca_generic(k, X, k.A, k.A2);
  for (const auto& B : sweep_points(plane, 64)) {
    if (incident(B, OA) || incident(B, k.axis)) continue;
    return ca_generic(k, X, B, ca_generic(k, B, k.A, k.A2));
  }
  throw DegenerateConstruction("no auxiliary point off the center line and the axis");
}

Flat apply_all(std::span<const CentralAxialCollineation> ks, const Flat& X) {
  Flat Y = X;
  for (const auto& k : ks) Y = apply_ca(k, Y);
  return Y;
}

bool general_position(const Quadruple& q) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (q[a] == q[b]) return false;
      for (int c = b + 1; c < 4; ++c) {
        if (collinear({q[a], q[b], q[c]})) return false;
      }
    }
  return true;
}

namespace {

using Collineations = std::vector<CentralAxialCollineation>;

/// Collineation with the given center and sample pair whose axis passes
/// through F and which sends every `checks` point to its partner. The
/// preferred axis is tried first, then the pencil on F.
std::optional<CentralAxialCollineation> with_axis_through(const Flat& center, const Flat& P, const Flat& P2,
                                                          const std::optional<Flat>& preferred, const Flat& F,
                                                          const std::vector<std::pair<Flat, Flat>>& checks) {
  std::vector<Flat> axes;
  if (preferred && preferred->is_line()) axes.push_back(*preferred);
  const Flat plane = join(join(center, P), F);
  if (!plane.is_plane()) return std::nullopt;
  for (auto& l : pencil(F, plane)) axes.push_back(std::move(l));
  for (const auto& axis : axes) {
    if (!incident(F, axis)) continue;
    try {
      auto k = CentralAxialCollineation::make(center, axis, P, P2);
      bool ok = true;
      for (const auto& [X, Y] : checks) ok = ok && apply_ca(k, X) == Y;
      if (ok) return k;
    } catch (const std::invalid_argument&) {
    }
  }
  return std::nullopt;
}

/// The three steps sending A,B,E to A',B',E' and then C''',D''' to C',D'.
/// Throws DegenerateConstruction (or invalid_argument) when a step is
/// undefined for these points.
Collineations three_steps(const Quadruple& q, const Quadruple& t) {
  const Flat &A = q[0], &B = q[1], &C = q[2], &D = q[3];
  const Flat &A1 = t[0], &B1 = t[1], &C1 = t[2], &D1 = t[3];
  const Flat AB = join(A, B), A1B1 = join(A1, B1);
  if (AB == A1B1) throw DegenerateConstruction("line AB equals line A'B'");
  const Flat E = meet_lines(AB, join(C, D), "E");
  const Flat E1 = meet_lines(A1B1, join(C1, D1), "E'");

  const Flat B2 = meet_lines(join_points(A, B1, "B''"), join_points(A1, B, "B''"), "B''");
  const Flat E2 = meet_lines(join_points(A, E1, "E''"), join_points(A1, E, "E''"), "E''");
  const Flat l = join_points(B2, E2, "l");
  const Flat A2 = meet_lines(l, join_points(A, A1, "AA'"), "A''");

  auto optional_line = [](const Flat& p, const Flat& q) -> std::optional<Flat> {
    if (p == q) return std::nullopt;
    return join(p, q);
  };
  auto try_meet = [](const Flat& p1, const Flat& q1, const Flat& p2, const Flat& q2) -> std::optional<Flat> {
    if (p1 == q1 || p2 == q2) return std::nullopt;
    auto x = meet(join(p1, q1), join(p2, q2));
    if (!x || !x->is_point()) return std::nullopt;
    return x;
  };

  Collineations out;
  // phi1: center A', pair A -> A'', axis t' through AB ∩ l.
  if (!(A == A2)) {
    std::optional<Flat> t1;
    auto X1 = try_meet(A, B2, A2, B), X2 = try_meet(B, E2, B2, E);
    if (X1 && X2) t1 = optional_line(*X1, *X2);
    auto k = with_axis_through(A1, A, A2, t1, meet_lines(AB, l, "AB∩l"), {{B, B2}, {E, E2}});
    if (!k) throw DegenerateConstruction("no axis for the first step");
    out.push_back(*k);
  }
  // phi2: center A, pair A'' -> A', axis t through l ∩ A'B'.
  if (!(A2 == A1)) {
    std::optional<Flat> t2;
    auto X1 = try_meet(A2, B1, A1, B2), X2 = try_meet(B2, E1, B1, E2);
    if (X1 && X2) t2 = optional_line(*X1, *X2);
    auto k = with_axis_through(A, A2, A1, t2, meet_lines(l, A1B1, "l∩A'B'"), {{B2, B1}, {E2, E1}});
    if (!k) throw DegenerateConstruction("no axis for the second step");
    out.push_back(*k);
  }
  // phi3: axis A'B', sending C''' to C' and D''' to D'.
  const Flat C3 = apply_all(out, C), D3 = apply_all(out, D);
  if (C3 == C1 && D3 == D1) return out;
  if (C3 == C1) {
    out.push_back(CentralAxialCollineation::make(C1, A1B1, D3, D1));
  } else if (D3 == D1) {
    out.push_back(CentralAxialCollineation::make(D1, A1B1, C3, C1));
  } else {
    const Flat CC = join(C1, C3), DD = join(D1, D3);
    Flat O = CC;
    if (!(CC == DD)) {
      O = meet_lines(CC, DD, "phi3 center");
    } else {
      // All four points on one line through E': the center is found on it
      // from the image of an auxiliary point U under both sample pairs.
      const Flat plane = join(A1B1, C1);
      std::optional<Flat> found;
      for (const auto& U : sweep_points(plane, 64)) {
        if (incident(U, CC) || incident(U, A1B1)) continue;
        try {
          const Flat N = meet_lines(join(U, D3), A1B1, "N");
          const Flat M = meet_lines(join(U, C3), A1B1, "M");
          const Flat U1 = meet_lines(join_points(N, D1, "U'"), join_points(C1, M, "U'"), "U'");
          found = meet_lines(join_points(U, U1, "UU'"), CC, "phi3 center");
          break;
        } catch (const std::invalid_argument&) {
        }
      }
      if (!found) throw DegenerateConstruction("no center for the third step");
      O = *found;
    }
    if (O == C3) {
      out.push_back(CentralAxialCollineation::make(O, A1B1, D3, D1));
    } else {
      out.push_back(CentralAxialCollineation::make(O, A1B1, C3, C1));
    }
  }
  return out;
}

/// Deterministic sweep of preliminary collineations: centers and axes from
/// the plane's sweep points, sample pair on the line from the center to the
/// first quadruple point off the axis. Calls `visit` with the running index
/// until it returns true.
bool sweep_preliminary(const Flat& plane, const Quadruple& q,
                       const std::function<bool(std::size_t, const CentralAxialCollineation&)>& visit) {
  const auto pts = sweep_points(plane, 24);
  std::size_t index = 0;
  for (const auto& O : pts)
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Flat axis = join(pts[i], pts[j]);
        const Flat* P = nullptr;
        for (const auto& x : q) {
          if (!incident(x, axis) && !(x == O)) {
            P = &x;
            break;
          }
        }
        if (!P) continue;
        for (const auto& P2 : sweep_points(join(O, *P), 6)) {
          if (P2 == *P || P2 == O || incident(P2, axis)) continue;
          if (visit(index++, CentralAxialCollineation::make(O, axis, *P, P2))) return true;
        }
      }
  return false;
}

bool maps_quadruple(std::span<const CentralAxialCollineation> ks, const Quadruple& from, const Quadruple& to) {
  for (int i = 0; i < 4; ++i) {
    if (!(apply_all(ks, from[i]) == to[i])) return false;
  }
  return true;
}

}  // namespace

std::vector<CentralAxialCollineation> decompose_four_points(const Quadruple& from, const Quadruple& to,
                                                            const DecomposeOptions& options) {
  for (const auto* q : {&from, &to}) {
    for (const auto& p : *q) require(p.is_point(), "quadruples must consist of points");
  }
  require(general_position(from) && general_position(to), "quadruple is not in general position");
  const Flat plane = join(join(from[0], from[1]), from[2]);
  for (const auto* q : {&from, &to}) {
    for (const auto& p : *q) require(incident(p, plane), "quadruples do not lie in one plane");
  }
  if (from == to && !options.force_preliminary) return {};

  auto attempt = [&](const std::optional<CentralAxialCollineation>& pre) -> std::optional<Collineations> {
    Collineations out;
    Quadruple cur = from;
    if (pre) {
      out.push_back(*pre);
      for (auto& p : cur) p = apply_ca(*pre, p);
    }
    try {
      for (auto& k : three_steps(cur, to)) out.push_back(std::move(k));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    if (!maps_quadruple(out, from, to)) return std::nullopt;
    return out;
  };
  if (!options.force_preliminary) {
    if (auto r = attempt(std::nullopt)) return *r;
  }
  std::optional<Collineations> found;
  const Flat A1B1 = join(to[0], to[1]);
  sweep_preliminary(plane, from, [&](std::size_t i, const CentralAxialCollineation& pre) {
    if (i < options.sweep_start) return false;
    if (join(apply_ca(pre, from[0]), apply_ca(pre, from[1])) == A1B1) return false;
    found = attempt(pre);
    return found.has_value();
  });
  if (found) return *found;
  throw DegenerateConstruction("no decomposition found by the preliminary sweep");
}

bool uniqueness_check(const Quadruple& from, const Quadruple& to, std::span<const CentralAxialCollineation> first,
                      std::span<const CentralAxialCollineation> second, std::uint64_t seed, Exec exec) {
  require(maps_quadruple(first, from, to) && maps_quadruple(second, from, to),
          "a composite does not send the quadruple to its image");
  const Flat plane = join(join(from[0], from[1]), from[2]);
  std::vector<Flat> pts;
  if (plane.ring().is_finite()) {
    pts = points_of(plane);
  } else {
    pts = sweep_points(plane, 32);
    for (std::size_t k = 0; k < 100; ++k) {
      Rng rng = trial_rng(seed, k, Stream::quadruple);
      pts.push_back(random_point_in(plane, rng, 4));
    }
  }
  return !first_index(exec, pts.size(), [&](std::uint64_t i) {
            return !(apply_all(first, pts[i]) == apply_all(second, pts[i]));
          }).has_value();
}

}  // namespace incidence
