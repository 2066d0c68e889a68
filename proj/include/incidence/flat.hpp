#pragma once

/**
 * @file flat.hpp
 * @brief Points, lines and planes of PG(3,K) over a division ring K.
 *
 * Coordinates form a right vector space: a point is the set of multiples
 * v*s, and elimination multiplies rows on the right. Every flat is stored as
 * the unique reduced row echelon basis of its subspace, so two flats are
 * equal exactly when their stored rows are equal.
 */

#include <array>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "incidence/scalar.hpp"

namespace incidence {

using Vec4 = std::array<Scalar, 4>;

Vec4 make_vec(const Ring& ring, long x1, long x2, long x3, long x4);
/// v * s, componentwise, scalar on the right.
Vec4 scale_right(const Vec4& v, const Scalar& s);
Vec4 operator+(const Vec4& a, const Vec4& b);
bool is_zero(const Vec4& v);

/// Right linear combination sum_i rows[i] * coeffs[i].
Vec4 combine(std::span<const Vec4> rows, std::span<const Scalar> coeffs);

/// Rank of the right span of `vectors`.
int span_rank(std::span<const Vec4> vectors);

class Flat {
 public:
  /// Canonical span of the generators. Dependent generators lower the rank.
  /// Throws std::invalid_argument when every generator is zero.
  static Flat span(std::span<const Vec4> generators);
  static Flat span(std::initializer_list<Vec4> generators);
  static Flat point(const Vec4& v);
  /// The rank-4 sentinel for the whole space.
  static Flat whole(const Ring& ring);

  const Ring& ring() const { return ring_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec4>& rows() const { return rows_; }

  bool is_point() const { return rank() == 1; }
  bool is_line() const { return rank() == 2; }
  bool is_plane() const { return rank() == 3; }
  bool is_whole() const { return rank() == 4; }

  /// Single-line human readable form, e.g. "[1,2,0,0]" or "<[1,0,0,0] [0,1,0,0]>".
  std::string str() const;

  friend bool operator==(const Flat& a, const Flat& b) { return a.rows_ == b.rows_; }

 private:
  Flat(Ring ring, std::vector<Vec4> rows) : ring_(ring), rows_(std::move(rows)) {}

  Ring ring_;
  std::vector<Vec4> rows_;
};

/// Empty optional encodes the zero subspace.
using MeetResult = std::optional<Flat>;

Flat join(const Flat& a, const Flat& b);
MeetResult meet(const Flat& a, const Flat& b);
bool incident(const Flat& sub, const Flat& sup);

/// Throws std::invalid_argument unless both arguments are lines.
bool are_skew(const Flat& l1, const Flat& l2);

bool collinear(std::span<const Flat> points);
bool coplanar(std::span<const Flat> points);
bool collinear(std::initializer_list<Flat> points);
bool coplanar(std::initializer_list<Flat> points);

/// Annihilator under the standard pairing: point <-> plane, line <-> line.
/// Only defined over commutative rings; throws std::invalid_argument for
/// quaternions and for the whole space.
Flat dual(const Flat& f);

/// Every point of a flat over a finite ring, in a fixed order.
std::vector<Flat> points_of(const Flat& f);

/// Point sum_i rows[i] * coeffs[i] of the flat. Coefficients must not all
/// vanish.
Flat point_in(const Flat& f, std::span<const Scalar> coeffs);

/// Deterministic enumeration of points of `f`: exhaustive over finite rings,
/// small-integer coefficient sweep otherwise. Returns at most `limit` points.
std::vector<Flat> sweep_points(const Flat& f, std::size_t limit);

/// Parses the form produced by Flat::str(). Generators need not be in
/// canonical form; the result is canonicalized. Throws std::invalid_argument.
Flat parse_flat(const Ring& ring, std::string_view text);

/// Right null space of the matrix whose columns are `columns`.
std::vector<std::vector<Scalar>> right_null_space(std::span<const Vec4> columns);

}  // namespace incidence
