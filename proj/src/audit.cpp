#include "incidence/audit.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "incidence/configurations.hpp"
#include "incidence/flat.hpp"
#include "incidence/generators.hpp"

namespace incidence {
namespace {

using Witness = std::vector<std::string>;
using Tuple = std::vector<std::size_t>;
using Instance = std::vector<Element>;

// ---- kernels ------------------------------------------------------------------

struct Kernel {
  enum class Kind { universal, existential, skipped };

  std::string axiom;
  Kind kind = Kind::universal;
  /// Finite instance space (mixed radix). Empty for sampled-only kernels.
  std::vector<std::uint64_t> radices;
  std::function<std::optional<Witness>(const std::vector<std::uint64_t>&)> finite_violation;
  std::function<std::optional<Witness>(Rng&)> sampled_violation;
  std::function<std::optional<Witness>()> example;
  std::function<bool(const Witness&)> reproduces;
  std::string note;
};

std::uint64_t stream_of(std::string_view axiom) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : axiom) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h;
}

std::uint64_t universe_of(const std::vector<std::uint64_t>& radices) {
  std::uint64_t n = 1;
  for (auto r : radices) {
    if (r == 0) return 0;
    if (n > std::numeric_limits<std::uint64_t>::max() / r) return std::numeric_limits<std::uint64_t>::max();
    n *= r;
  }
  return n;
}

std::vector<std::uint64_t> digits_of(std::uint64_t index, const std::vector<std::uint64_t>& radices) {
  std::vector<std::uint64_t> d(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    d[i] = index % radices[i];
    index /= radices[i];
  }
  return d;
}

AuditEntry run_kernel(const Kernel& k, const AuditOptions& o) {
  AuditEntry e;
  e.axiom = k.axiom;
  e.seed = o.seed;
  e.note = k.note;
  if (k.kind == Kernel::Kind::skipped) {
    e.status = AuditStatus::skipped;
    return e;
  }
  if (k.kind == Kernel::Kind::existential) {
    auto found = k.example();
    e.coverage = {true, 1};
    if (found) {
      e.status = AuditStatus::pass;
      std::string joined;
      for (const auto& s : *found) joined += (joined.empty() ? "" : " ") + s;
      e.note = "example: " + joined;
    } else {
      e.status = AuditStatus::fail;
      e.note = "no instance exists";
    }
    return e;
  }
  const std::uint64_t stream = stream_of(k.axiom);
  const std::uint64_t universe = universe_of(k.radices);
  if (!k.radices.empty() && (universe == 0 || o.exhaustive || universe <= o.budget)) {
    e.coverage = {true, universe};
    auto hit = first_index(o.exec, universe, [&](std::uint64_t i) {
      return k.finite_violation(digits_of(i, k.radices)).has_value();
    });
    if (hit) {
      e.status = AuditStatus::fail;
      e.witness = *k.finite_violation(digits_of(*hit, k.radices));
    } else {
      e.status = AuditStatus::pass;
    }
    return e;
  }
  auto sample = [&](std::uint64_t s) -> std::optional<Witness> {
    Rng rng(mix_seed(o.seed, s, stream));
    if (k.radices.empty()) return k.sampled_violation(rng);
    std::vector<std::uint64_t> d;
    for (auto r : k.radices) d.push_back(rng() % r);
    return k.finite_violation(d);
  };
  e.coverage = {false, o.budget};
  auto hit = first_index(o.exec, o.budget, [&](std::uint64_t s) { return sample(s).has_value(); });
  if (hit) {
    e.status = AuditStatus::fail;
    e.witness = *sample(*hit);
    e.coverage.instances = *hit + 1;
    e.note = "violated at sample " + std::to_string(*hit);
  } else {
    e.status = AuditStatus::pass;
  }
  return e;
}

Kernel skipped(std::string axiom, std::string note) {
  Kernel k;
  k.axiom = std::move(axiom);
  k.kind = Kernel::Kind::skipped;
  k.note = std::move(note);
  return k;
}

// ---- finite models ------------------------------------------------------------

class FiniteContext {
 public:
  explicit FiniteContext(const FiniteGeometry& g) : g_(g) {
    lines_in_plane_.resize(g.num_planes());
    planes_on_line_.resize(g.num_lines());
    for (std::size_t a = 0; a < g.num_planes(); ++a) {
      for (std::size_t l = 0; l < g.num_lines(); ++l) {
        if (g.line_in_plane(l, a)) {
          lines_in_plane_[a].push_back(l);
          planes_on_line_[l].push_back(a);
        }
      }
    }
    for (std::size_t i = 0; i < g.num_points(); ++i) index_.emplace(g.point_id(i), std::pair{'p', i});
    for (std::size_t i = 0; i < g.num_lines(); ++i) index_.emplace(g.line_id(i), std::pair{'l', i});
    for (std::size_t i = 0; i < g.num_planes(); ++i) index_.emplace(g.plane_id(i), std::pair{'h', i});
  }

  const FiniteGeometry& g() const { return g_; }
  const std::vector<std::size_t>& lines_in_plane(std::size_t a) const { return lines_in_plane_[a]; }
  const std::vector<std::size_t>& planes_on_line(std::size_t l) const { return planes_on_line_[l]; }

  std::string id(char kind, std::size_t i) const {
    return kind == 'p' ? g_.point_id(i) : kind == 'l' ? g_.line_id(i) : g_.plane_id(i);
  }

  Witness ids(std::string_view kinds, const Tuple& t) const {
    Witness w;
    for (std::size_t i = 0; i < t.size(); ++i) w.push_back(id(kinds[i], t[i]));
    return w;
  }

  /// Maps ids back to indices; throws for unknown ids or wrong kinds.
  Tuple parse(std::string_view kinds, const Witness& w) const {
    if (w.size() < kinds.size()) throw std::invalid_argument("witness is too short");
    Tuple t;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      auto it = index_.find(w[i]);
      if (it == index_.end()) throw std::invalid_argument("unknown element id '" + w[i] + "'");
      if (it->second.first != kinds[i]) throw std::invalid_argument("element '" + w[i] + "' has the wrong kind");
      t.push_back(it->second.second);
    }
    return t;
  }

  std::vector<std::size_t> lines_through_both(std::size_t p, std::size_t q) const {
    std::vector<std::size_t> out;
    for (std::size_t l : g_.lines_through(p)) {
      if (g_.on_line(q, l)) out.push_back(l);
    }
    return out;
  }

  bool skew(std::size_t l, std::size_t m) const {
    if (!g_.has_planes()) return !g_.lines_meet(l, m);
    for (std::size_t a : planes_on_line_[l]) {
      if (g_.line_in_plane(m, a)) return false;
    }
    return true;
  }

  bool meets(std::size_t l, std::size_t m) const { return l == m || g_.lines_meet(l, m); }

  /// Lines other than the excluded ones meeting every listed line.
  std::vector<std::size_t> transversals(std::initializer_list<std::size_t> of) const {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < g_.num_lines(); ++t) {
      bool ok = true;
      for (std::size_t l : of) ok = ok && t != l && g_.lines_meet(t, l);
      if (ok) out.push_back(t);
    }
    return out;
  }

  /// Four of the candidates with no three collinear.
  std::optional<Tuple> quadrangle(const std::vector<std::size_t>& c) const {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          if (g_.collinear({c[i], c[j], c[k]})) continue;
          for (std::size_t l = k + 1; l < n; ++l) {
            if (!g_.collinear({c[i], c[j], c[l]}) && !g_.collinear({c[i], c[k], c[l]}) &&
                !g_.collinear({c[j], c[k], c[l]})) {
              return Tuple{c[i], c[j], c[k], c[l]};
            }
          }
        }
    return std::nullopt;
  }

  /// Five points with no four coplanar.
  std::optional<Tuple> five_points() const {
    Tuple chosen;
    std::function<bool(std::size_t)> extend = [&](std::size_t from) {
      if (chosen.size() == 5) return true;
      for (std::size_t p = from; p < g_.num_points(); ++p) {
        bool ok = true;
        const std::size_t m = chosen.size();
        for (std::size_t a = 0; ok && a < m; ++a)
          for (std::size_t b = a + 1; ok && b < m; ++b)
            for (std::size_t c = b + 1; ok && c < m; ++c) ok = !g_.coplanar({chosen[a], chosen[b], chosen[c], p});
        if (!ok) continue;
        chosen.push_back(p);
        if (extend(p + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (extend(0)) return chosen;
    return std::nullopt;
  }

 private:
  const FiniteGeometry& g_;
  std::vector<std::vector<std::size_t>> lines_in_plane_, planes_on_line_;
  std::unordered_map<std::string, std::pair<char, std::size_t>> index_;
};

/// A universal finite axiom: `check` receives the instance tuple and returns
/// the extra witness ids when the instance violates the axiom (and nullopt
/// for satisfied or inadmissible instances).
struct FiniteSpec {
  std::string axiom;
  std::string kinds;
  std::vector<std::uint64_t> radices;
  std::function<std::optional<Tuple>(const std::vector<std::uint64_t>&)> decode;
  std::function<std::optional<Witness>(const Tuple&)> check;
  std::string replay_kinds;
  std::function<bool(const Tuple&)> replay;
};

Kernel finite_kernel(std::shared_ptr<const FiniteContext> ctx, FiniteSpec spec) {
  Kernel k;
  k.axiom = spec.axiom;
  k.radices = spec.radices;
  auto decode = spec.decode ? spec.decode : [](const std::vector<std::uint64_t>& d) -> std::optional<Tuple> {
    return Tuple(d.begin(), d.end());
  };
  k.finite_violation = [ctx, decode, spec](const std::vector<std::uint64_t>& d) -> std::optional<Witness> {
    auto t = decode(d);
    if (!t) return std::nullopt;
    auto extra = spec.check(*t);
    if (!extra) return std::nullopt;
    Witness w = ctx->ids(spec.kinds, *t);
    w.insert(w.end(), extra->begin(), extra->end());
    return w;
  };
  k.reproduces = [ctx, spec](const Witness& w) {
    if (spec.replay) return spec.replay(ctx->parse(spec.replay_kinds, w));
    return spec.check(ctx->parse(spec.kinds, w)).has_value();
  };
  return k;
}

Kernel finite_existential(std::string axiom, std::function<std::optional<Witness>()> example) {
  Kernel k;
  k.axiom = std::move(axiom);
  k.kind = Kernel::Kind::existential;
  k.example = example;
  k.reproduces = [example](const Witness&) { return !example().has_value(); };
  return k;
}

std::vector<Kernel> finite_kernels(const FiniteGeometry& geometry, AxiomSet set) {
  auto ctx = std::make_shared<const FiniteContext>(geometry);
  const FiniteContext& c = *ctx;
  const FiniteGeometry& g = geometry;
  const std::uint64_t n = g.num_points(), L = g.num_lines(), H = g.num_planes();
  auto ids = [ctx](char kind, const std::vector<std::size_t>& v) {
    Witness w;
    for (auto i : v) w.push_back(ctx->id(kind, i));
    return w;
  };

  auto unique_line = [&c, ids](std::string axiom, bool at_least, bool at_most) {
    return FiniteSpec{std::move(axiom), "pp", {}, nullptr, [&c, ids, at_least, at_most](const Tuple& t) -> std::optional<Witness> {
                        if (t[0] >= t[1]) return std::nullopt;
                        const auto lines = c.lines_through_both(t[0], t[1]);
                        if ((at_least && lines.empty()) || (at_most && lines.size() > 1)) return ids('l', lines);
                        return std::nullopt;
                      }};
  };
  auto with_radices = [](FiniteSpec s, std::vector<std::uint64_t> r) {
    s.radices = std::move(r);
    return s;
  };

  auto quadrangle_all = [ctx, ids]() -> std::optional<Witness> {
    std::vector<std::size_t> all(ctx->g().num_points());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto q = ctx->quadrangle(all);
    if (!q) return std::nullopt;
    return ids('p', *q);
  };

  std::vector<Kernel> out;
  switch (set) {
    case AxiomSet::P: {
      out.push_back(finite_kernel(ctx, with_radices(unique_line("P1", true, true), {n, n})));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"P2", "ll", {L, L}, nullptr, [&g, ids](const Tuple& t) -> std::optional<Witness> {
                            if (t[0] >= t[1]) return std::nullopt;
                            const PointSet common = g.line(t[0]) & g.line(t[1]);
                            if (common.count() == 1) return std::nullopt;
                            std::vector<std::size_t> pts;
                            for (auto p = common.find_first(); p != PointSet::npos; p = common.find_next(p)) pts.push_back(p);
                            return ids('p', pts);
                          }}));
      out.push_back(finite_existential("P3", quadrangle_all));
      break;
    }
    case AxiomSet::S: {
      out.push_back(finite_kernel(ctx, with_radices(unique_line("S1", true, true), {n, n})));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"S2", "hh", {H, H}, nullptr, [&c, &g, ids](const Tuple& t) -> std::optional<Witness> {
                            if (t[0] >= t[1]) return std::nullopt;
                            std::vector<std::size_t> common;
                            for (std::size_t l : c.lines_in_plane(t[0])) {
                              if (g.line_in_plane(l, t[1])) common.push_back(l);
                            }
                            if (common.size() == 1) return std::nullopt;
                            return ids('l', common);
                          }}));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"S3", "ppp", {n, n, n}, nullptr, [&g, ids](const Tuple& t) -> std::optional<Witness> {
                            if (t[0] >= t[1] || t[1] >= t[2] || g.collinear({t[0], t[1], t[2]})) return std::nullopt;
                            std::vector<std::size_t> planes;
                            for (std::size_t a : g.planes_through(t[0])) {
                              if (g.on_plane(t[1], a) && g.on_plane(t[2], a)) planes.push_back(a);
                            }
                            if (planes.size() == 1) return std::nullopt;
                            return ids('h', planes);
                          }}));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"S4", "hhh", {H, H, H}, nullptr, [&c, &g, ids](const Tuple& t) -> std::optional<Witness> {
                            if (t[0] >= t[1] || t[1] >= t[2]) return std::nullopt;
                            for (std::size_t l : c.lines_in_plane(t[0])) {
                              if (g.line_in_plane(l, t[1]) && g.line_in_plane(l, t[2])) return std::nullopt;
                            }
                            const PointSet common = g.plane(t[0]) & g.plane(t[1]) & g.plane(t[2]);
                            if (common.count() == 1) return std::nullopt;
                            std::vector<std::size_t> pts;
                            for (auto p = common.find_first(); p != PointSet::npos; p = common.find_next(p)) pts.push_back(p);
                            return ids('p', pts);
                          }}));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"S5", "lh", {L, H}, nullptr, [&g, ids](const Tuple& t) -> std::optional<Witness> {
                            const PointSet common = g.line(t[0]) & g.plane(t[1]);
                            if (common.count() < 2 || g.line_in_plane(t[0], t[1])) return std::nullopt;
                            const auto first = common.find_first();
                            const PointSet outside = g.line(t[0]) - g.plane(t[1]);
                            return ids('p', {first, common.find_next(first), outside.find_first()});
                          }}));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"S6", "lp", {L, n}, nullptr, [&c, &g, ids](const Tuple& t) -> std::optional<Witness> {
                            std::vector<std::size_t> with, without;
                            for (std::size_t a : c.planes_on_line(t[0])) (g.on_plane(t[1], a) ? with : without).push_back(a);
                            if (with.size() < 2 || without.empty()) return std::nullopt;
                            return ids('h', {with[0], with[1], without[0]});
                          }}));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"S7", "h", {H}, nullptr, [&c, &g](const Tuple& t) -> std::optional<Witness> {
                            if (c.quadrangle(g.plane_points(t[0]))) return std::nullopt;
                            return Witness{};
                          }}));
      out.push_back(finite_existential("S8", [ctx, ids]() -> std::optional<Witness> {
        auto five = ctx->five_points();
        if (!five) return std::nullopt;
        return ids('p', *five);
      }));
      break;
    }
    case AxiomSet::VY: {
      out.push_back(finite_kernel(ctx, with_radices(unique_line("A1", true, false), {n, n})));
      out.push_back(finite_kernel(ctx, with_radices(unique_line("A2", false, true), {n, n})));
      std::uint64_t k = 0;
      for (std::size_t l = 0; l < L; ++l) k = std::max<std::uint64_t>(k, g.line_points(l).size());
      FiniteSpec a3{"A3", "ppppp", {n, n, n, k, k}, nullptr, nullptr};
      a3.decode = [&c, &g](const std::vector<std::uint64_t>& d) -> std::optional<Tuple> {
        const std::size_t A = d[0], B = d[1], C = d[2];
        if (A == B || B == C || A == C) return std::nullopt;
        const auto bc = c.lines_through_both(B, C);
        const auto ca = c.lines_through_both(C, A);
        if (bc.empty() || ca.empty()) return std::nullopt;
        const auto& bc_pts = g.line_points(bc.front());
        const auto& ca_pts = g.line_points(ca.front());
        if (d[3] >= bc_pts.size() || d[4] >= ca_pts.size()) return std::nullopt;
        return Tuple{A, B, C, bc_pts[d[3]], ca_pts[d[4]]};
      };
      a3.check = [&c, &g](const Tuple& t) -> std::optional<Witness> {
        const std::size_t A = t[0], B = t[1], C = t[2], D = t[3], E = t[4];
        if (A == B || B == C || A == C || D == E || g.collinear({A, B, C})) return std::nullopt;
        if (!g.collinear({B, C, D}) || !g.collinear({C, A, E})) return std::nullopt;
        for (std::size_t ab : c.lines_through_both(A, B)) {
          for (std::size_t de : c.lines_through_both(D, E)) {
            if (c.meets(ab, de)) return std::nullopt;
          }
        }
        return Witness{};
      };
      out.push_back(finite_kernel(ctx, a3));
      out.push_back(finite_kernel(ctx, FiniteSpec{"A4", "l", {L}, nullptr, [&g](const Tuple& t) -> std::optional<Witness> {
                                                  if (g.line_points(t[0]).size() >= 3) return std::nullopt;
                                                  return Witness{};
                                                }}));
      out.push_back(finite_existential("A5", [ctx]() -> std::optional<Witness> {
        if (ctx->g().num_lines() == 0) return std::nullopt;
        return Witness{ctx->g().line_id(0)};
      }));
      out.push_back(finite_kernel(ctx, FiniteSpec{"A6", "l", {L}, nullptr, [&g](const Tuple& t) -> std::optional<Witness> {
                                                  if (g.line_points(t[0]).size() < g.num_points()) return std::nullopt;
                                                  return Witness{};
                                                }}));
      if (!g.has_planes()) {
        out.push_back(skipped("A7", "model has no planes"));
        out.push_back(skipped("A8", "model has no planes"));
        break;
      }
      out.push_back(finite_kernel(ctx, FiniteSpec{"A7", "h", {H}, nullptr, [&g](const Tuple& t) -> std::optional<Witness> {
                                                  if (g.plane_points(t[0]).size() < g.num_points()) return std::nullopt;
                                                  return Witness{};
                                                }}));
      out.push_back(finite_kernel(
          ctx, FiniteSpec{"A8", "hpp", {H, n, n}, nullptr, [&c, &g](const Tuple& t) -> std::optional<Witness> {
                            const std::size_t a = t[0], D = t[1], X = t[2];
                            if (g.on_plane(D, a) || D == X) return std::nullopt;
                            for (std::size_t l : c.lines_through_both(D, X)) {
                              if (g.line(l).intersects(g.plane(a))) return std::nullopt;
                            }
                            return Witness{};
                          }}));
      break;
    }
    case AxiomSet::G: {
      FiniteSpec gs{"G", "lll", {L, L, L}, nullptr, nullptr};
      gs.check = [&c, ids](const Tuple& t) -> std::optional<Witness> {
        const std::size_t a = t[0], b = t[1], cc = t[2];
        if (a >= b || b >= cc || !c.skew(a, b) || !c.skew(a, cc) || !c.skew(b, cc)) return std::nullopt;
        const auto T = c.transversals({a, b, cc});
        for (std::size_t i = 0; i < T.size(); ++i)
          for (std::size_t j = i + 1; j < T.size(); ++j) {
            if (!c.skew(T[i], T[j])) continue;
            for (std::size_t k = j + 1; k < T.size(); ++k) {
              if (!c.skew(T[i], T[k]) || !c.skew(T[j], T[k])) continue;
              const auto D = c.transversals({T[i], T[j], T[k]});
              for (std::size_t h : T)
                for (std::size_t d : D) {
                  if (!c.meets(h, d)) return ids('l', {T[i], T[j], T[k], h, d});
                }
            }
          }
        return std::nullopt;
      };
      gs.replay_kinds = "llllllll";
      gs.replay = [&c](const Tuple& t) {
        const std::size_t a = t[0], b = t[1], cc = t[2], e = t[3], f = t[4], gg = t[5], h = t[6], d = t[7];
        if (!c.skew(a, b) || !c.skew(a, cc) || !c.skew(b, cc)) return false;
        if (!c.skew(e, f) || !c.skew(e, gg) || !c.skew(f, gg)) return false;
        for (std::size_t x : {a, b, cc}) {
          for (std::size_t y : {e, f, gg}) {
            if (!c.meets(x, y)) return false;
          }
          if (!c.meets(x, h)) return false;
        }
        for (std::size_t y : {e, f, gg}) {
          if (!c.meets(y, d)) return false;
        }
        return !c.meets(h, d);
      };
      out.push_back(finite_kernel(ctx, gs));
      break;
    }
  }
  return out;
}

// ---- sampled models -----------------------------------------------------------

/// A universal axiom on an infinite (or unenumerated) model: `generate`
/// draws an instance, `violated` decides it. Witnesses are the canonical
/// strings of the instance elements.
struct SampledSpec {
  std::string axiom;
  std::string kinds;  // 'p' point, 'l' line, 'h' plane per instance slot
  std::function<std::optional<Instance>(Rng&)> generate;
  std::function<bool(const Instance&)> violated;
};

using ElementParser = std::function<Element(char kind, const std::string&)>;

Kernel sampled_kernel(SampledSpec spec, ElementParser parse) {
  Kernel k;
  k.axiom = spec.axiom;
  k.sampled_violation = [spec](Rng& rng) -> std::optional<Witness> {
    auto inst = spec.generate(rng);
    if (!inst || !spec.violated(*inst)) return std::nullopt;
    Witness w;
    for (const auto& e : *inst) w.push_back(element_str(e));
    return w;
  };
  k.reproduces = [spec, parse](const Witness& w) {
    if (w.size() != spec.kinds.size()) throw std::invalid_argument("witness has the wrong length");
    Instance inst;
    for (std::size_t i = 0; i < w.size(); ++i) inst.push_back(parse(spec.kinds[i], w[i]));
    return spec.violated(inst);
  };
  return k;
}

Kernel sampled_existential(std::string axiom, std::function<std::optional<Instance>()> example) {
  Kernel k;
  k.axiom = std::move(axiom);
  k.kind = Kernel::Kind::existential;
  k.example = [example]() -> std::optional<Witness> {
    auto inst = example();
    if (!inst) return std::nullopt;
    Witness w;
    for (const auto& e : *inst) w.push_back(element_str(e));
    return w;
  };
  k.reproduces = [example](const Witness&) { return !example().has_value(); };
  return k;
}

// Coordinatized PG(3,K) ---------------------------------------------------------

const Flat& F(const Element& e) { return std::get<Flat>(e); }

bool ranks_are(const Instance& inst, std::string_view kinds) {
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const int want = kinds[i] == 'p' ? 1 : kinds[i] == 'l' ? 2 : 3;
    if (F(inst[i]).rank() != want) return false;
  }
  return true;
}

std::vector<Kernel> coordinate_kernels(const Ring& ring, AxiomSet set, int height) {
  ElementParser parse = [ring](char, const std::string& s) -> Element { return parse_flat(ring, s); };
  auto point = [ring, height](Rng& rng) { return random_point(ring, rng, height); };
  auto plane = [ring, height](Rng& rng) {
    for (;;) {
      Flat h = join(random_line(ring, rng, height), random_point(ring, rng, height));
      if (h.is_plane()) return h;
    }
  };
  auto distinct_points = [point](Rng& rng, int count) {
    std::vector<Flat> pts;
    while (static_cast<int>(pts.size()) < count) {
      Flat p = point(rng);
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
    }
    return pts;
  };
  auto basis_points = [ring]() {
    return std::vector<Flat>{Flat::point(make_vec(ring, 1, 0, 0, 0)), Flat::point(make_vec(ring, 0, 1, 0, 0)),
                             Flat::point(make_vec(ring, 0, 0, 1, 0)), Flat::point(make_vec(ring, 0, 0, 0, 1)),
                             Flat::point(make_vec(ring, 1, 1, 1, 1))};
  };

  SampledSpec line_of_two{"", "pp", [distinct_points](Rng& rng) -> std::optional<Instance> {
                            auto p = distinct_points(rng, 2);
                            return Instance{p[0], p[1]};
                          },
                          nullptr};
  // Existence: join is a line through both. Uniqueness: the line through one
  // of them and a third point of the join is the join again.
  auto exists_line = [](const Instance& i) {
    if (!ranks_are(i, "pp") || F(i[0]) == F(i[1])) return false;
    const Flat l = join(F(i[0]), F(i[1]));
    return !(l.is_line() && incident(F(i[0]), l) && incident(F(i[1]), l));
  };
  auto unique_line = [](const Instance& i) {
    if (!ranks_are(i, "pp") || F(i[0]) == F(i[1])) return false;
    const Flat l = join(F(i[0]), F(i[1]));
    const Flat r = Flat::point(l.rows()[0] + l.rows()[1]);
    return !(join(F(i[0]), r) == l || r == F(i[0])) || !(join(F(i[1]), r) == l || r == F(i[1]));
  };
  auto named = [](SampledSpec s, std::string axiom, std::function<bool(const Instance&)> v) {
    s.axiom = std::move(axiom);
    s.violated = std::move(v);
    return s;
  };

  std::vector<Kernel> out;
  switch (set) {
    case AxiomSet::P:
      break;
    case AxiomSet::S: {
      out.push_back(sampled_kernel(named(line_of_two, "S1",
                                         [exists_line, unique_line](const Instance& i) {
                                           return exists_line(i) || unique_line(i);
                                         }),
                                   parse));
      out.push_back(sampled_kernel(
          {"S2", "hh",
           [plane](Rng& rng) -> std::optional<Instance> {
             Flat a = plane(rng), b = plane(rng);
             if (a == b) return std::nullopt;
             return Instance{a, b};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "hh") || F(i[0]) == F(i[1])) return false;
             auto m = meet(F(i[0]), F(i[1]));
             return !(m && m->is_line() && incident(*m, F(i[0])) && incident(*m, F(i[1])));
           }},
          parse));
      out.push_back(sampled_kernel(
          {"S3", "ppp",
           [distinct_points](Rng& rng) -> std::optional<Instance> {
             auto p = distinct_points(rng, 3);
             if (collinear({p[0], p[1], p[2]})) return std::nullopt;
             return Instance{p[0], p[1], p[2]};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "ppp") || collinear({F(i[0]), F(i[1]), F(i[2])})) return false;
             const Flat h = join(join(F(i[0]), F(i[1])), F(i[2]));
             const Flat h2 = join(join(F(i[2]), F(i[0])), F(i[1]));
             return !(h.is_plane() && h == h2);
           }},
          parse));
      out.push_back(sampled_kernel(
          {"S4", "hhh",
           [plane](Rng& rng) -> std::optional<Instance> {
             Flat a = plane(rng), b = plane(rng), c = plane(rng);
             auto ab = meet(a, b);
             if (a == b || !ab || incident(*ab, c)) return std::nullopt;
             return Instance{a, b, c};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "hhh")) return false;
             auto ab = meet(F(i[0]), F(i[1]));
             if (F(i[0]) == F(i[1]) || !ab || incident(*ab, F(i[2]))) return false;
             auto p = meet(*ab, F(i[2]));
             auto q = meet(*meet(F(i[1]), F(i[2])), F(i[0]));
             return !(p && p->is_point() && q && *p == *q);
           }},
          parse));
      out.push_back(sampled_kernel(
          {"S5", "lh",
           [ring, height, point](Rng& rng) -> std::optional<Instance> {
             const Flat l = random_line(ring, rng, height);
             // Half the planes contain l, so the hypothesis is exercised.
             Flat h = join(rng() % 2 ? l : Flat::point(l.rows()[0]), join(point(rng), point(rng)));
             if (!h.is_plane()) return std::nullopt;
             return Instance{l, h};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "lh")) return false;
             auto m = meet(F(i[0]), F(i[1]));
             return m && m->rank() >= 2 && !incident(F(i[0]), F(i[1]));
           }},
          parse));
      out.push_back(sampled_kernel(
          {"S6", "lphhh",
           [ring, height, point](Rng& rng) -> std::optional<Instance> {
             const Flat l = random_line(ring, rng, height);
             const Flat p = rng() % 2 ? random_point_in(l, rng, height) : point(rng);
             Instance inst{l, p};
             for (int k = 0; k < 3; ++k) {
               const Flat h = join(l, point(rng));
               if (!h.is_plane()) return std::nullopt;
               inst.push_back(h);
             }
             return inst;
           },
           [](const Instance& i) {
             if (!ranks_are(i, "lphhh")) return false;
             for (int k = 2; k < 5; ++k) {
               if (!incident(F(i[0]), F(i[k]))) return false;
             }
             const int containing = incident(F(i[1]), F(i[2])) + incident(F(i[1]), F(i[3])) + incident(F(i[1]), F(i[4]));
             return containing == 2;
           }},
          parse));
      out.push_back(sampled_kernel(
          {"S7", "h", [plane](Rng& rng) -> std::optional<Instance> { return Instance{plane(rng)}; },
           [](const Instance& i) {
             if (!ranks_are(i, "h")) return false;
             const auto& r = F(i[0]).rows();
             const std::array<Flat, 4> q{Flat::point(r[0]), Flat::point(r[1]), Flat::point(r[2]),
                                         Flat::point(r[0] + r[1] + r[2])};
             for (int a = 0; a < 4; ++a)
               for (int b = a + 1; b < 4; ++b)
                 for (int c = b + 1; c < 4; ++c) {
                   if (collinear({q[a], q[b], q[c]})) return true;
                 }
             return !(incident(q[3], F(i[0])));
           }},
          parse));
      out.push_back(sampled_existential("S8", [basis_points]() -> std::optional<Instance> {
        const auto p = basis_points();
        for (int skip = 0; skip < 5; ++skip) {
          std::vector<Flat> four;
          for (int k = 0; k < 5; ++k) {
            if (k != skip) four.push_back(p[k]);
          }
          if (coplanar(std::span<const Flat>(four))) return std::nullopt;
        }
        return Instance(p.begin(), p.end());
      }));
      break;
    }
    case AxiomSet::VY: {
      out.push_back(sampled_kernel(named(line_of_two, "A1", exists_line), parse));
      out.push_back(sampled_kernel(named(line_of_two, "A2", unique_line), parse));
      out.push_back(sampled_kernel(
          {"A3", "ppppp",
           [distinct_points, height](Rng& rng) -> std::optional<Instance> {
             auto p = distinct_points(rng, 3);
             if (collinear({p[0], p[1], p[2]})) return std::nullopt;
             const Flat D = random_point_in(join(p[1], p[2]), rng, height);
             const Flat E = random_point_in(join(p[2], p[0]), rng, height);
             if (D == E) return std::nullopt;
             return Instance{p[0], p[1], p[2], D, E};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "ppppp") || F(i[3]) == F(i[4])) return false;
             if (F(i[0]) == F(i[1]) || collinear({F(i[0]), F(i[1]), F(i[2])})) return false;
             if (!collinear({F(i[1]), F(i[2]), F(i[3])}) || !collinear({F(i[2]), F(i[0]), F(i[4])})) return false;
             return !meet(join(F(i[0]), F(i[1])), join(F(i[3]), F(i[4]))).has_value();
           }},
          parse));
      out.push_back(sampled_kernel(
          {"A4", "l",
           [ring, height](Rng& rng) -> std::optional<Instance> { return Instance{random_line(ring, rng, height)}; },
           [](const Instance& i) {
             if (!ranks_are(i, "l")) return false;
             const auto& r = F(i[0]).rows();
             const Flat a = Flat::point(r[0]), b = Flat::point(r[1]), c = Flat::point(r[0] + r[1]);
             return a == b || a == c || b == c || !incident(c, F(i[0]));
           }},
          parse));
      out.push_back(sampled_existential("A5", [ring]() -> std::optional<Instance> {
        return Instance{Flat::span({make_vec(ring, 1, 0, 0, 0), make_vec(ring, 0, 1, 0, 0)})};
      }));
      auto misses_basis = [basis_points](const Flat& f) {
        for (const auto& p : basis_points()) {
          if (!incident(p, f)) return false;
        }
        return true;
      };
      out.push_back(sampled_kernel(
          {"A6", "l",
           [ring, height](Rng& rng) -> std::optional<Instance> { return Instance{random_line(ring, rng, height)}; },
           [misses_basis](const Instance& i) { return ranks_are(i, "l") && misses_basis(F(i[0])); }},
          parse));
      out.push_back(sampled_kernel(
          {"A7", "h", [plane](Rng& rng) -> std::optional<Instance> { return Instance{plane(rng)}; },
           [misses_basis](const Instance& i) { return ranks_are(i, "h") && misses_basis(F(i[0])); }},
          parse));
      out.push_back(sampled_kernel(
          {"A8", "hpp",
           [plane, point](Rng& rng) -> std::optional<Instance> {
             const Flat a = plane(rng), D = point(rng), X = point(rng);
             if (incident(D, a) || D == X) return std::nullopt;
             return Instance{a, D, X};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "hpp") || incident(F(i[1]), F(i[0])) || F(i[1]) == F(i[2])) return false;
             return !meet(join(F(i[1]), F(i[2])), F(i[0])).has_value();
           }},
          parse));
      break;
    }
    case AxiomSet::G: {
      out.push_back(sampled_kernel(
          {"G", "llllllll",
           [ring, height](Rng& rng) -> std::optional<Instance> {
             auto s = sample_gallucci(ring, rng, height);
             if (!s.value) return std::nullopt;
             const auto& in = *s.value;
             return Instance{in.a, in.b, in.c, in.e, in.f, in.g, in.h, in.d};
           },
           [](const Instance& i) {
             if (!ranks_are(i, "llllllll")) return false;
             const GallucciInput in{F(i[0]), F(i[1]), F(i[2]), F(i[3]), F(i[4]), F(i[5]), F(i[6]), F(i[7])};
             if (gallucci_defect(in)) return false;
             return check_gallucci(in).fails();
           }},
          parse));
      break;
    }
  }
  return out;
}

// Moulton plane -------------------------------------------------------------------

const moulton::Point& MP(const Element& e) { return std::get<moulton::Point>(e); }
const moulton::Line& ML(const Element& e) { return std::get<moulton::Line>(e); }

moulton::Point random_any_moulton_point(Rng& rng, int height) {
  const auto r = rng() % 20;
  if (r == 0) return moulton::Point::ideal(std::nullopt);
  if (r == 1) return moulton::Point::ideal(random_rational(rng, height));
  return random_moulton_point(rng, height);
}

moulton::Line random_moulton_line(Rng& rng, int height) {
  const auto r = rng() % 20;
  if (r == 0) return moulton::Line::at_infinity();
  if (r <= 2) return moulton::Line::vertical(random_rational(rng, height));
  auto m = random_rational(rng, height);
  return moulton::Line::sloped(std::move(m), random_rational(rng, height));
}

std::vector<Kernel> moulton_kernels(AxiomSet set, int height) {
  ElementParser parse = [](char kind, const std::string& s) -> Element {
    if (kind == 'p') return moulton::parse_point(s);
    return moulton::parse_line(s);
  };
  SampledSpec two_points{"", "pp", [height](Rng& rng) -> std::optional<Instance> {
                           auto p = random_any_moulton_point(rng, height);
                           auto q = random_any_moulton_point(rng, height);
                           if (p == q) return std::nullopt;
                           return Instance{p, q};
                         },
                         nullptr};
  auto line_count = [](const Instance& i) { return moulton::lines_through_both(MP(i[0]), MP(i[1])).size(); };
  auto named = [](SampledSpec s, std::string axiom, std::function<bool(const Instance&)> v) {
    s.axiom = std::move(axiom);
    s.violated = std::move(v);
    return s;
  };
  auto quadrangle = []() -> std::optional<Instance> {
    const std::array<moulton::Point, 4> q{moulton::Point::affine(0, 0), moulton::Point::affine(1, 0),
                                          moulton::Point::affine(0, 1), moulton::Point::affine(1, 1)};
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c) {
          for (const auto& l : moulton::lines_through_both(q[a], q[b])) {
            if (moulton::on(q[c], l)) return std::nullopt;
          }
        }
    return Instance(q.begin(), q.end());
  };

  std::vector<Kernel> out;
  switch (set) {
    case AxiomSet::P: {
      out.push_back(sampled_kernel(named(two_points, "P1",
                                         [line_count](const Instance& i) {
                                           return !(MP(i[0]) == MP(i[1])) && line_count(i) != 1;
                                         }),
                                   parse));
      out.push_back(sampled_kernel(
          {"P2", "ll",
           [height](Rng& rng) -> std::optional<Instance> {
             auto l = random_moulton_line(rng, height);
             auto m = random_moulton_line(rng, height);
             if (l == m) return std::nullopt;
             return Instance{l, m};
           },
           [](const Instance& i) {
             return !(ML(i[0]) == ML(i[1])) && moulton::common_points(ML(i[0]), ML(i[1])).size() != 1;
           }},
          parse));
      out.push_back(sampled_existential("P3", quadrangle));
      break;
    }
    case AxiomSet::VY: {
      out.push_back(sampled_kernel(named(two_points, "A1",
                                         [line_count](const Instance& i) {
                                           return !(MP(i[0]) == MP(i[1])) && line_count(i) == 0;
                                         }),
                                   parse));
      out.push_back(sampled_kernel(named(two_points, "A2",
                                         [line_count](const Instance& i) {
                                           return !(MP(i[0]) == MP(i[1])) && line_count(i) > 1;
                                         }),
                                   parse));
      out.push_back(sampled_kernel(
          {"A3", "ppppp",
           [height](Rng& rng) -> std::optional<Instance> {
             const moulton::Plane g;
             auto A = random_moulton_point(rng, height), B = random_moulton_point(rng, height);
             auto C = random_moulton_point(rng, height);
             if (A == B || B == C || A == C || g.on(C, g.join(A, B))) return std::nullopt;
             auto D = g.point_on(g.join(B, C), random_rational(rng, height));
             auto E = g.point_on(g.join(C, A), random_rational(rng, height));
             if (D == E) return std::nullopt;
             return Instance{A, B, C, D, E};
           },
           [](const Instance& i) {
             const moulton::Plane g;
             const auto &A = MP(i[0]), &B = MP(i[1]), &C = MP(i[2]), &D = MP(i[3]), &E = MP(i[4]);
             if (A == B || B == C || A == C || D == E || g.on(C, g.join(A, B))) return false;
             if (!(D == B || D == C || g.on(D, g.join(B, C))) || !(E == C || E == A || g.on(E, g.join(C, A)))) {
               return false;
             }
             const auto ab = g.join(A, B), de = g.join(D, E);
             return !(ab == de) && moulton::common_points(ab, de).empty();
           }},
          parse));
      out.push_back(sampled_kernel(
          {"A4", "l",
           [height](Rng& rng) -> std::optional<Instance> { return Instance{random_moulton_line(rng, height)}; },
           [](const Instance& i) {
             const moulton::Plane g;
             const auto& l = ML(i[0]);
             std::vector<moulton::Point> pts;
             for (int t = 0; t < 3; ++t) pts.push_back(g.point_on(l, t));
             return !(g.on(pts[0], l) && g.on(pts[1], l) && g.on(pts[2], l)) || pts[0] == pts[1] ||
                    pts[0] == pts[2] || pts[1] == pts[2];
           }},
          parse));
      out.push_back(sampled_existential("A5", []() -> std::optional<Instance> {
        return Instance{moulton::Line::sloped(0, 0)};
      }));
      out.push_back(sampled_kernel(
          {"A6", "l",
           [height](Rng& rng) -> std::optional<Instance> { return Instance{random_moulton_line(rng, height)}; },
           [](const Instance& i) {
             for (const auto& p : {moulton::Point::affine(0, 0), moulton::Point::affine(1, 0),
                                   moulton::Point::affine(0, 1)}) {
               if (!moulton::on(p, ML(i[0]))) return false;
             }
             return true;
           }},
          parse));
      out.push_back(skipped("A7", "plane model"));
      out.push_back(skipped("A8", "plane model"));
      break;
    }
    case AxiomSet::S:
    case AxiomSet::G:
      break;
  }
  return out;
}

std::vector<Kernel> kernels_for(const IncidenceModel& model, AxiomSet set, const AuditOptions& o) {
  if (!applicable(model, set)) {
    throw std::invalid_argument("axiom set " + std::string(to_string(set)) + " does not apply to model " + model.tag());
  }
  if (const auto* g = model.finite()) return finite_kernels(*g, set);
  if (const auto* c = model.coordinates()) return coordinate_kernels(c->ring, set, o.height);
  return moulton_kernels(set, o.height);
}

}  // namespace

std::string_view to_string(AxiomSet set) {
  switch (set) {
    case AxiomSet::P:
      return "P";
    case AxiomSet::S:
      return "S";
    case AxiomSet::VY:
      return "VY";
    case AxiomSet::G:
      return "G";
  }
  return "?";
}

AxiomSet parse_axiom_set(std::string_view name) {
  if (name == "P") return AxiomSet::P;
  if (name == "S") return AxiomSet::S;
  if (name == "VY") return AxiomSet::VY;
  if (name == "G") return AxiomSet::G;
  throw std::invalid_argument("unknown axiom set '" + std::string(name) + "' (expected P, S, VY or G)");
}

std::string_view to_string(AuditStatus status) {
  switch (status) {
    case AuditStatus::pass:
      return "pass";
    case AuditStatus::fail:
      return "fail";
    case AuditStatus::skipped:
      return "skipped";
  }
  return "?";
}

bool applicable(const IncidenceModel& model, AxiomSet set) {
  switch (set) {
    case AxiomSet::P:
      return model.is_plane_model();
    case AxiomSet::S:
    case AxiomSet::G:
      return !model.is_plane_model();
    case AxiomSet::VY:
      return true;
  }
  return false;
}

std::vector<AuditEntry> audit(const IncidenceModel& model, AxiomSet set, const AuditOptions& options) {
  std::vector<AuditEntry> out;
  for (const auto& k : kernels_for(model, set, options)) out.push_back(run_kernel(k, options));
  return out;
}

bool recheck_audit_witness(const IncidenceModel& model, std::string_view axiom, const Witness& witness,
                           const AuditOptions& options) {
  for (AxiomSet set : {AxiomSet::P, AxiomSet::S, AxiomSet::VY, AxiomSet::G}) {
    if (!applicable(model, set)) continue;
    for (const auto& k : kernels_for(model, set, options)) {
      if (k.axiom != axiom) continue;
      if (k.kind == Kernel::Kind::skipped) throw std::invalid_argument("axiom " + k.axiom + " is skipped on this model");
      return k.reproduces(witness);
    }
  }
  throw std::invalid_argument("unknown axiom '" + std::string(axiom) + "' for model " + model.tag());
}

}  // namespace incidence
