#pragma once

/**
 * @file generators.hpp
 * @brief Seeded samplers for configurations over bounded-height coordinates.
 *
 * Every sampler draws from a caller-owned engine, so a trial is reproduced
 * by reseeding with mix_seed(seed, trial, stream). Samplers return nullopt
 * together with a reason when the draw violates a genericity condition.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "incidence/configurations.hpp"
#include "incidence/flat.hpp"
#include "incidence/moulton.hpp"
#include "incidence/parallel.hpp"

namespace incidence {

using Rng = std::mt19937_64;

/// Streams keep the samplers of different suites independent.
enum class Stream : std::uint64_t {
  desargues = 1,
  desargues_spatial,
  pappus,
  brianchon,
  gallucci,
  transport,
  moulton_desargues,
  audit,
  chain,
  ftp,
  quadruple,
};

inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial, Stream stream) {
  return Rng(mix_seed(seed, trial, static_cast<std::uint64_t>(stream)));
}

/// Random point of a flat, coefficients of height <= `height`.
Flat random_point_in(const Flat& f, Rng& rng, int height);
/// Random point of a flat avoiding every listed flat.
std::optional<Flat> random_point_avoiding(const Flat& f, std::initializer_list<const Flat*> avoid, Rng& rng,
                                          int height, int attempts = 64);
Flat random_point(const Ring& ring, Rng& rng, int height);
Flat random_line(const Ring& ring, Rng& rng, int height);
/// Random point of the standard plane x4 = 0.
Flat random_plane_point(const Ring& ring, Rng& rng, int height);

/// Rational in [-h, h] with denominator in [1, h].
mpq_class random_rational(Rng& rng, int height);
moulton::Point random_moulton_point(Rng& rng, int height);

template <class T>
struct Sample {
  std::optional<T> value;
  std::string rejected;  // genericity condition that failed, when empty value

  static Sample reject(std::string why) { return Sample{std::nullopt, std::move(why)}; }
};

/// Triangles in perspective from S in the standard plane.
Sample<DesarguesInput<Flat>> sample_desargues(const Ring& ring, Rng& rng, int height);
/// Two non-coplanar triangles in perspective from a point of space.
Sample<std::array<std::array<Flat, 3>, 2>> sample_desargues_spatial(const Ring& ring, Rng& rng, int height);
Sample<PappusInput<Flat>> sample_pappus(const Ring& ring, Rng& rng, int height);
Sample<BrianchonInput<Flat>> sample_brianchon(const Ring& ring, Rng& rng, int height);
Sample<GallucciInput> sample_gallucci(const Ring& ring, Rng& rng, int height);
Sample<DesarguesInput<moulton::Point>> sample_moulton_desargues(Rng& rng, int height);

struct TransportSample {
  PappusInput<Flat> pappus;
  Flat P, Q;
};
/// A Pappus configuration in the standard plane with lift points P and Q.
Sample<TransportSample> sample_transport(const Ring& ring, Rng& rng, int height);
/// Lift points for an admissible Pappus input: P off the standard plane and
/// Q on XP, distinct from X = AB'.A'B and from P.
Sample<std::pair<Flat, Flat>> sample_lift(const PappusInput<Flat>& in, Rng& rng, int height);

}  // namespace incidence
