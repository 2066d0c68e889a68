#include "incidence/scalar.hpp"

#include <array>
#include <regex>
#include <stdexcept>

namespace incidence {
namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t mod) {
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::string fraction_str(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_fraction(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '+') body.erase(body.begin());
  const auto slash = body.find('/');
  mpz_class num(body.substr(0, slash), 10);
  mpz_class den(body.substr(slash + 1), 10);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

[[noreturn]] void mismatch() { throw std::invalid_argument("scalar ring mismatch"); }

bool is_real(const Quaternion& a) { return sgn(a.x) == 0 && sgn(a.y) == 0 && sgn(a.z) == 0; }

/// Integer components over one common denominator.
struct IntQuaternion {
  std::array<mpz_class, 4> c;
  mpz_class den;
};

IntQuaternion integral(const Quaternion& a) {
  IntQuaternion out;
  out.den = a.w.get_den();
  for (const mpq_class* q : {&a.x, &a.y, &a.z}) {
    if (q->get_den() != out.den) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), q->get_den_mpz_t());
  }
  const mpq_class* parts[4] = {&a.w, &a.x, &a.y, &a.z};
  for (int i = 0; i < 4; ++i) {
    const mpz_class& d = parts[i]->get_den();
    out.c[i] = d == out.den ? parts[i]->get_num() : mpz_class(parts[i]->get_num() * (out.den / d));
  }
  return out;
}

mpq_class fraction(mpz_class num, const mpz_class& den) {
  mpq_class q;
  q.get_num() = std::move(num);
  q.get_den() = den;
  q.canonicalize();
  return q;
}

/// Hamilton product computed on integer numerators so that only the four
/// result components are reduced to lowest terms.
Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  if (is_real(a)) return Quaternion{a.w * b.w, a.w * b.x, a.w * b.y, a.w * b.z};
  if (is_real(b)) return Quaternion{a.w * b.w, a.x * b.w, a.y * b.w, a.z * b.w};
  const IntQuaternion p = integral(a);
  const IntQuaternion q = integral(b);
  const auto& [w1, x1, y1, z1] = p.c;
  const auto& [w2, x2, y2, z2] = q.c;
  const mpz_class den = p.den * q.den;
  return Quaternion{fraction(w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2, den),
                    fraction(w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2, den),
                    fraction(w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2, den),
                    fraction(w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2, den)};
}

mpq_class random_fraction(std::mt19937_64& rng, int height) {
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace

// ---- Ring ------------------------------------------------------------------

Ring Ring::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("GF(" + std::to_string(p) + "): modulus is not prime");
  return Ring(RingKind::prime_field, p);
}

Ring Ring::rationals() { return Ring(RingKind::rational, 0); }
Ring Ring::quaternions() { return Ring(RingKind::quaternion, 0); }

Ring Ring::from_tag(std::string_view tag) {
  if (tag == "rational") return rationals();
  if (tag == "quaternion") return quaternions();
  if (tag.starts_with("gf:")) {
    const std::string digits(tag.substr(3));
    if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad ring tag '" + std::string(tag) + "'");
    }
    return prime_field(static_cast<std::uint32_t>(std::stoul(digits)));
  }
  throw std::invalid_argument("unknown ring tag '" + std::string(tag) + "'");
}

std::string Ring::tag() const {
  switch (kind_) {
    case RingKind::prime_field: return "gf:" + std::to_string(modulus_);
    case RingKind::rational: return "rational";
    case RingKind::quaternion: return "quaternion";
  }
  return {};
}

Scalar Ring::zero() const { return from_int(0); }
Scalar Ring::one() const { return from_int(1); }

Scalar Ring::from_int(long value) const {
  switch (kind_) {
    case RingKind::prime_field: {
      const long m = static_cast<long>(modulus_);
      return Scalar(Residue{static_cast<std::uint32_t>(((value % m) + m) % m), modulus_});
    }
    case RingKind::rational: return Scalar(mpq_class(value));
    case RingKind::quaternion: return Scalar(Quaternion{mpq_class(value), 0, 0, 0});
  }
  throw std::logic_error("unreachable");
}

Scalar Ring::unit_i() const {
  if (kind_ != RingKind::quaternion) throw std::invalid_argument("unit_i: not a quaternion ring");
  return Scalar(Quaternion{0, 1, 0, 0});
}
Scalar Ring::unit_j() const {
  if (kind_ != RingKind::quaternion) throw std::invalid_argument("unit_j: not a quaternion ring");
  return Scalar(Quaternion{0, 0, 1, 0});
}
Scalar Ring::unit_k() const {
  if (kind_ != RingKind::quaternion) throw std::invalid_argument("unit_k: not a quaternion ring");
  return Scalar(Quaternion{0, 0, 0, 1});
}

std::vector<Scalar> Ring::elements() const {
  if (!is_finite()) throw std::invalid_argument("elements(): ring " + tag() + " is infinite");
  std::vector<Scalar> out;
  out.reserve(modulus_);
  for (std::uint32_t v = 0; v < modulus_; ++v) out.emplace_back(Residue{v, modulus_});
  return out;
}

Scalar Ring::parse(std::string_view text) const {
  static const std::regex residue_re(R"(^(0|[1-9][0-9]*)$)");
  static const std::regex fraction_re(R"(^-?[0-9]+/[0-9]+$)");
  static const std::regex quaternion_re(
      R"(^(-?[0-9]+/[0-9]+)([+-][0-9]+/[0-9]+)i([+-][0-9]+/[0-9]+)j([+-][0-9]+/[0-9]+)k$)");
  const std::string s(text);
  std::smatch m;
  switch (kind_) {
    case RingKind::prime_field:
      if (s.size() <= 10 && std::regex_match(s, residue_re)) {
        const auto v = std::stoull(s);
        if (v < modulus_) return Scalar(Residue{static_cast<std::uint32_t>(v), modulus_});
      }
      break;
    case RingKind::rational:
      if (std::regex_match(s, fraction_re)) return Scalar(parse_fraction(s));
      break;
    case RingKind::quaternion:
      if (std::regex_match(s, m, quaternion_re)) {
        return Scalar(Quaternion{parse_fraction(m[1]), parse_fraction(m[2]), parse_fraction(m[3]),
                                 parse_fraction(m[4])});
      }
      break;
  }
  throw std::invalid_argument("cannot parse '" + s + "' as an element of " + tag());
}

// ---- Scalar ----------------------------------------------------------------

Scalar::Scalar(Residue r) : value_(r) {}
Scalar::Scalar(mpq_class q) : value_(std::move(q)) {}
Scalar::Scalar(Quaternion q) : value_(std::move(q)) {}

Ring Scalar::ring() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Ring(RingKind::prime_field, r->modulus);
  if (std::holds_alternative<mpq_class>(value_)) return Ring(RingKind::rational, 0);
  return Ring(RingKind::quaternion, 0);
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  const auto& h = std::get<Quaternion>(value_);
  return sgn(h.w) == 0 && sgn(h.x) == 0 && sgn(h.y) == 0 && sgn(h.z) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  const auto& h = std::get<Quaternion>(value_);
  return h.w == 1 && sgn(h.x) == 0 && sgn(h.y) == 0 && sgn(h.z) == 0;
}

mpq_class Scalar::norm() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q * *q;
  if (const auto* h = std::get_if<Quaternion>(&value_)) {
    return h->w * h->w + h->x * h->x + h->y * h->y + h->z * h->z;
  }
  throw std::invalid_argument("norm is not defined over a prime field");
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{pow_mod(r->value, r->modulus - 2, r->modulus), r->modulus});
  }
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(1 / *q));
  const auto& h = std::get<Quaternion>(value_);
  const mpq_class n = norm();
  return Scalar(Quaternion{h.w / n, -h.x / n, -h.y / n, -h.z / n});
}

std::string Scalar::str() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  if (const auto* q = std::get_if<mpq_class>(&value_)) return fraction_str(*q);
  const auto& h = std::get<Quaternion>(value_);
  auto signed_part = [](const mpq_class& c, char unit) {
    return (sgn(c) < 0 ? "" : "+") + fraction_str(c) + unit;
  };
  return fraction_str(h.w) + signed_part(h.x, 'i') + signed_part(h.y, 'j') + signed_part(h.z, 'k');
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
  }
  if (const auto* q = std::get_if<mpq_class>(&value_)) return Scalar(mpq_class(-*q));
  const auto& h = std::get<Quaternion>(value_);
  return Scalar(Quaternion{-h.w, -h.x, -h.y, -h.z});
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) mismatch();
  if (const auto* ra = std::get_if<Residue>(&a.value_)) {
    const auto& rb = std::get<Residue>(b.value_);
    if (ra->modulus != rb.modulus) mismatch();
    return Scalar(Residue{static_cast<std::uint32_t>((std::uint64_t{ra->value} + rb.value) % ra->modulus),
                          ra->modulus});
  }
  if (const auto* qa = std::get_if<mpq_class>(&a.value_)) {
    return Scalar(mpq_class(*qa + std::get<mpq_class>(b.value_)));
  }
  const auto& x = std::get<Quaternion>(a.value_);
  const auto& y = std::get<Quaternion>(b.value_);
  return Scalar(Quaternion{x.w + y.w, x.x + y.x, x.y + y.y, x.z + y.z});
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) mismatch();
  if (std::holds_alternative<Residue>(a.value_)) return a + (-b);
  if (const auto* qa = std::get_if<mpq_class>(&a.value_)) {
    return Scalar(mpq_class(*qa - std::get<mpq_class>(b.value_)));
  }
  const auto& x = std::get<Quaternion>(a.value_);
  const auto& y = std::get<Quaternion>(b.value_);
  return Scalar(Quaternion{x.w - y.w, x.x - y.x, x.y - y.y, x.z - y.z});
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) mismatch();
  if (const auto* ra = std::get_if<Residue>(&a.value_)) {
    const auto& rb = std::get<Residue>(b.value_);
    if (ra->modulus != rb.modulus) mismatch();
    return Scalar(Residue{static_cast<std::uint32_t>((std::uint64_t{ra->value} * rb.value) % ra->modulus),
                          ra->modulus});
  }
  if (const auto* qa = std::get_if<mpq_class>(&a.value_)) {
    return Scalar(mpq_class(*qa * std::get<mpq_class>(b.value_)));
  }
  return Scalar(qmul(std::get<Quaternion>(a.value_), std::get<Quaternion>(b.value_)));
}

Scalar arith(ArithOp op, const Scalar& a, const Scalar& b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw std::logic_error("unreachable");
}

std::optional<std::pair<Scalar, Scalar>> commutativity_witness(const Ring& ring) {
  if (ring.is_commutative()) return std::nullopt;
  return std::make_pair(ring.unit_i(), ring.unit_j());
}

Scalar random_scalar(const Ring& ring, std::mt19937_64& rng, int height) {
  switch (ring.kind()) {
    case RingKind::prime_field: {
      std::uniform_int_distribution<std::uint32_t> dist(0, ring.modulus() - 1);
      return Scalar(Residue{dist(rng), ring.modulus()});
    }
    case RingKind::rational: return Scalar(random_fraction(rng, height));
    case RingKind::quaternion: {
      auto w = random_fraction(rng, height);
      auto x = random_fraction(rng, height);
      auto y = random_fraction(rng, height);
      auto z = random_fraction(rng, height);
      return Scalar(Quaternion{w, x, y, z});
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace incidence
