#pragma once

/**
 * @file scalar.hpp
 * @brief Exact arithmetic over the coordinate division rings.
 *
 * Three rings are supported: prime fields GF(p), the rationals, and the
 * quaternions with rational components. Values never round; rationals and
 * quaternion components are GMP fractions kept in lowest terms.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace incidence {

enum class RingKind { prime_field, rational, quaternion };

class Scalar;

/// Descriptor of a coordinate ring. Cheap to copy.
class Ring {
 public:
  /// GF(p). Throws std::invalid_argument unless p is prime.
  static Ring prime_field(std::uint32_t p);
  static Ring rationals();
  static Ring quaternions();

  /// Parses the model tags used on the command line: "gf:5", "rational",
  /// "quaternion".
  static Ring from_tag(std::string_view tag);

  RingKind kind() const { return kind_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_finite() const { return kind_ == RingKind::prime_field; }
  bool is_commutative() const { return kind_ != RingKind::quaternion; }
  std::string tag() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long value) const;
  /// Quaternion units; throws for other rings.
  Scalar unit_i() const;
  Scalar unit_j() const;
  Scalar unit_k() const;

  /// All elements in increasing residue order (finite rings only).
  std::vector<Scalar> elements() const;

  /// Accepts exactly the canonical string forms produced by Scalar::str().
  Scalar parse(std::string_view text) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  friend class Scalar;
  Ring(RingKind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_;
  std::uint32_t modulus_;
};

struct Residue {
  std::uint32_t value;
  std::uint32_t modulus;
  friend bool operator==(const Residue&, const Residue&) = default;
};

struct Quaternion {
  mpq_class w, x, y, z;
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

/// Element of one of the rings. Binary operations on scalars of different
/// rings throw std::invalid_argument.
class Scalar {
 public:
  using Value = std::variant<Residue, mpq_class, Quaternion>;

  explicit Scalar(Residue r);
  explicit Scalar(mpq_class q);
  explicit Scalar(Quaternion q);

  Ring ring() const;
  const Value& value() const { return value_; }

  bool is_zero() const;
  bool is_one() const;

  /// Two-sided inverse. Throws std::domain_error on zero.
  Scalar inverse() const;
  /// Sum of squared components (quaternions); the value itself squared for
  /// rationals. Undefined for prime fields.
  mpq_class norm() const;

  std::string str() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  Value value_;
};

enum class ArithOp { add, sub, mul };

Scalar arith(ArithOp op, const Scalar& a, const Scalar& b);
inline Scalar inverse(const Scalar& a) { return a.inverse(); }

/// A pair (a, b) with ab != ba, or nothing when the ring is commutative.
std::optional<std::pair<Scalar, Scalar>> commutativity_witness(const Ring& ring);

/// Uniform element of bounded height: all residues for GF(p); numerator in
/// [-height, height] and denominator in [1, height] for each rational
/// component.
Scalar random_scalar(const Ring& ring, std::mt19937_64& rng, int height);

}  // namespace incidence
