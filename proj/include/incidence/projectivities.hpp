#pragma once

/**
 * @file projectivities.hpp
 * @brief Perspectivities, projectivity chains, axial perspectivities and
 *        central-axial collineations of a plane.
 *
 * All maps are immutable values over Flat points. Constructors validate
 * their incidence conditions and throw std::invalid_argument; apply
 * functions throw std::invalid_argument for points outside the domain.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "incidence/flat.hpp"
#include "incidence/generators.hpp"
#include "incidence/parallel.hpp"

namespace incidence {

/// Central perspectivity from `source` to `target` through `center`.
struct Perspectivity {
  Flat center, source, target;

  /// Validates: distinct coplanar lines, center in their plane on neither.
  static Perspectivity make(Flat center, Flat source, Flat target);
  Flat plane() const { return join(source, target); }
  Perspectivity inverse() const { return Perspectivity{center, target, source}; }
};

/// Perspectivity of `source` onto `target` through the line `axis`: the
/// image of A is where the plane (axis, A) meets the target.
struct AxialPerspectivity {
  Flat axis, source, target;

  /// Validates pairwise skewness.
  static AxialPerspectivity make(Flat axis, Flat source, Flat target);
};

struct PerspectivityChain {
  std::vector<Perspectivity> links;

  /// Validates: nonempty, target of each link is the source of the next.
  static PerspectivityChain make(std::vector<Perspectivity> links);
  const Flat& source() const { return links.front().source; }
  const Flat& target() const { return links.back().target; }
  std::size_t size() const { return links.size(); }
};

using Projectivity = std::variant<PerspectivityChain, AxialPerspectivity>;

Flat apply_perspectivity(const Perspectivity& p, const Flat& X);
Flat apply_axial(const AxialPerspectivity& ap, const Flat& A);
Flat apply_chain(const PerspectivityChain& chain, const Flat& X);
Flat apply(const Projectivity& p, const Flat& X);
const Flat& source_of(const Projectivity& p);
const Flat& target_of(const Projectivity& p);

/// Chain of length at most two acting like `chain` on its source line; a
/// single axial perspectivity when the end lines are skew. Throws
/// std::invalid_argument for a chain of three or more links returning to
/// its source line, and DegenerateConstruction if no reduction step applies.
Projectivity reduce_chain(const PerspectivityChain& chain);

/// Points at which the comparison of two maps is made: every point of the
/// line over a finite ring, otherwise `samples` seeded random points plus a
/// short deterministic sweep. `extra` points are always included.
std::vector<Flat> comparison_points(const Flat& line, std::uint64_t seed, std::size_t samples = 100,
                                    std::span<const Flat> extra = {});

/// First point of `points` at which the two maps differ.
std::optional<Flat> first_disagreement(const Projectivity& p1, const Projectivity& p2, std::span<const Flat> points,
                                       Exec exec = Exec::parallel);

struct FtpOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::vector<Flat> extra;  // further points of the source to compare at
  Exec exec = Exec::parallel;
};

/// True iff p1 and p2 agree on every compared point of `source`. Throws
/// std::invalid_argument when a pair is off the stated lines, when a map
/// has other end lines, or when either map disagrees with a pair.
bool ftp_check(const Flat& source, const Flat& target, const std::array<std::pair<Flat, Flat>, 3>& pairs,
               const Projectivity& p1, const Projectivity& p2, const FtpOptions& options = {});

/// Random chain with `length` links starting at `source`; the end line
/// differs from the source. Nullopt when a draw degenerates.
std::optional<PerspectivityChain> random_chain(const Flat& source, std::size_t length, Rng& rng, int height);

/// A chain from `source` to `target` (distinct lines) sending each
/// points[i] to images[i]: a random perspectivity onto a line meeting the
/// target, followed by the two-step construction through an auxiliary
/// line. Nullopt when a draw degenerates.
std::optional<PerspectivityChain> chain_through_three(const Flat& source, const Flat& target,
                                                      const std::array<Flat, 3>& points,
                                                      const std::array<Flat, 3>& images, Rng& rng, int height);

// ---- central-axial collineations ---------------------------------------------

struct CentralAxialCollineation {
  Flat center, axis, A, A2;

  /// Validates: coplanar data, A and A2 off the axis, distinct from the
  /// center and collinear with it.
  static CentralAxialCollineation make(Flat center, Flat axis, Flat A, Flat A2);
  Flat plane() const { return join(axis, A); }
};

/// Image of a point of the collineation's plane.
Flat apply_ca(const CentralAxialCollineation& k, const Flat& X);
/// Applies the list left to right (first element acts first).
Flat apply_all(std::span<const CentralAxialCollineation> ks, const Flat& X);

using Quadruple = std::array<Flat, 4>;

struct DecomposeOptions {
  /// Always start with a preliminary collineation, taking the candidates
  /// of the deterministic sweep from this index on.
  bool force_preliminary = false;
  std::size_t sweep_start = 0;
};

/// At most four collineations whose composite sends from[i] to to[i].
/// Throws std::invalid_argument unless all eight points are coplanar and
/// both quadruples are in general position.
std::vector<CentralAxialCollineation> decompose_four_points(const Quadruple& from, const Quadruple& to,
                                                            const DecomposeOptions& options = {});

/// True iff both composites agree on every point of the plane (finite
/// rings) or on seeded samples. Throws std::invalid_argument when either
/// composite misses a prescribed pair.
bool uniqueness_check(const Quadruple& from, const Quadruple& to, std::span<const CentralAxialCollineation> first,
                      std::span<const CentralAxialCollineation> second, std::uint64_t seed = 1,
                      Exec exec = Exec::parallel);

/// No three of the points collinear.
bool general_position(const Quadruple& q);

}  // namespace incidence
