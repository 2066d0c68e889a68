#include "incidence/flat.hpp"

#include <algorithm>
#include <stdexcept>

namespace incidence {
namespace {

// Reduced echelon form of the right row space, pivots normalized to 1.
std::vector<Vec4> reduce_rows(std::vector<Vec4> rows) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < 4 && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    rows[r] = scale_right(rows[r], rows[r][col].inverse());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == r || rows[j][col].is_zero()) continue;
      const Scalar factor = rows[j][col];
      // Entries of the pivot row left of `col` are already zero.
      for (std::size_t c = col; c < 4; ++c) {
        if (!rows[r][c].is_zero()) rows[j][c] = rows[j][c] - rows[r][c] * factor;
      }
    }
    ++r;
  }
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end());
  return rows;
}

Ring ring_of(std::span<const Vec4> vectors) {
  if (vectors.empty()) throw std::invalid_argument("no generators");
  return vectors.front()[0].ring();
}

void require_same_ring(const Flat& a, const Flat& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("flats over different rings");
}

}  // namespace

Vec4 make_vec(const Ring& ring, long x1, long x2, long x3, long x4) {
  return {ring.from_int(x1), ring.from_int(x2), ring.from_int(x3), ring.from_int(x4)};
}

Vec4 scale_right(const Vec4& v, const Scalar& s) { return {v[0] * s, v[1] * s, v[2] * s, v[3] * s}; }

Vec4 operator+(const Vec4& a, const Vec4& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

bool is_zero(const Vec4& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec4 combine(std::span<const Vec4> rows, std::span<const Scalar> coeffs) {
  if (rows.size() != coeffs.size() || rows.empty()) throw std::invalid_argument("combine: size mismatch");
  Vec4 out = scale_right(rows[0], coeffs[0]);
  for (std::size_t i = 1; i < rows.size(); ++i) out = out + scale_right(rows[i], coeffs[i]);
  return out;
}

int span_rank(std::span<const Vec4> vectors) {
  if (vectors.empty()) return 0;
  return static_cast<int>(reduce_rows({vectors.begin(), vectors.end()}).size());
}

Flat Flat::span(std::span<const Vec4> generators) {
  const Ring ring = ring_of(generators);
  auto rows = reduce_rows({generators.begin(), generators.end()});
  if (rows.empty()) throw std::invalid_argument("span of zero vectors");
  return Flat(ring, std::move(rows));
}

Flat Flat::span(std::initializer_list<Vec4> generators) {
  return span(std::span<const Vec4>(generators.begin(), generators.size()));
}

Flat Flat::point(const Vec4& v) { return span(std::span<const Vec4>(&v, 1)); }

Flat Flat::whole(const Ring& ring) {
  return Flat(ring, {make_vec(ring, 1, 0, 0, 0), make_vec(ring, 0, 1, 0, 0), make_vec(ring, 0, 0, 1, 0),
                     make_vec(ring, 0, 0, 0, 1)});
}

std::string Flat::str() const {
  auto row_str = [](const Vec4& v) {
    return "[" + v[0].str() + "," + v[1].str() + "," + v[2].str() + "," + v[3].str() + "]";
  };
  if (rows_.size() == 1) return row_str(rows_[0]);
  std::string out = "<";
  for (std::size_t i = 0; i < rows_.size(); ++i) out += (i ? " " : "") + row_str(rows_[i]);
  return out + ">";
}

Flat parse_flat(const Ring& ring, std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed flat '" + std::string(text) + "'"); };
  std::string_view body = text;
  const bool bracketed = body.size() >= 2 && body.front() == '<' && body.back() == '>';
  if (bracketed) body = body.substr(1, body.size() - 2);
  std::vector<Vec4> rows;
  while (!body.empty()) {
    if (body.front() != '[') throw fail();
    const auto close = body.find(']');
    if (close == std::string_view::npos) throw fail();
    std::string_view inner = body.substr(1, close - 1);
    std::vector<Scalar> coords;
    for (std::size_t start = 0;;) {
      const auto comma = inner.find(',', start);
      coords.push_back(ring.parse(inner.substr(start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (coords.size() != 4) throw fail();
    rows.push_back(Vec4{coords[0], coords[1], coords[2], coords[3]});
    body.remove_prefix(close + 1);
    if (!body.empty()) {
      if (!bracketed || body.front() != ' ') throw fail();
      body.remove_prefix(1);
    }
  }
  if (rows.empty() || (!bracketed && rows.size() != 1)) throw fail();
  return Flat::span(rows);
}

Flat join(const Flat& a, const Flat& b) {
  require_same_ring(a, b);
  std::vector<Vec4> all = a.rows();
  all.insert(all.end(), b.rows().begin(), b.rows().end());
  return Flat::span(all);
}

std::vector<std::vector<Scalar>> right_null_space(std::span<const Vec4> columns) {
  const std::size_t n = columns.size();
  if (n == 0) return {};
  const Ring ring = ring_of(columns);
  // m[row][col] = columns[col][row]; left row operations keep {x : m x = 0}.
  std::vector<std::vector<Scalar>> m(4, std::vector<Scalar>(n, ring.zero()));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = columns[c][r];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < 4; ++col) {
    std::size_t pivot = r;
    while (pivot < 4 && m[pivot][col].is_zero()) ++pivot;
    if (pivot == 4) continue;
    std::swap(m[r], m[pivot]);
    const Scalar inv = m[r][col].inverse();
    for (auto& e : m[r]) e = inv * e;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == r || m[j][col].is_zero()) continue;
      const Scalar factor = m[j][col];
      for (std::size_t k = 0; k < n; ++k) m[j][k] = m[j][k] - factor * m[r][k];
    }
    pivot_cols.push_back(col);
    ++r;
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Scalar> x(n, ring.zero());
    x[free] = ring.one();
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = -m[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

MeetResult meet(const Flat& a, const Flat& b) {
  require_same_ring(a, b);
  // Solve sum u_i x_i - sum w_j y_j = 0; the u-part of each solution spans the meet.
  std::vector<Vec4> columns = a.rows();
  for (const auto& w : b.rows()) {
    columns.push_back({-w[0], -w[1], -w[2], -w[3]});
  }
  const auto basis = right_null_space(columns);
  std::vector<Vec4> vectors;
  const std::size_t ka = a.rows().size();
  for (const auto& x : basis) {
    Vec4 v = combine(a.rows(), std::span<const Scalar>(x.data(), ka));
    if (!is_zero(v)) vectors.push_back(std::move(v));
  }
  if (vectors.empty()) return std::nullopt;
  return Flat::span(vectors);
}

bool incident(const Flat& sub, const Flat& sup) {
  require_same_ring(sub, sup);
  if (sub.rank() > sup.rank()) return false;
  return join(sub, sup).rank() == sup.rank();
}

bool are_skew(const Flat& l1, const Flat& l2) {
  if (!l1.is_line() || !l2.is_line()) throw std::invalid_argument("are_skew: arguments must be lines");
  return join(l1, l2).is_whole();
}

bool collinear(std::span<const Flat> points) {
  std::vector<Vec4> rows;
  for (const auto& p : points) rows.insert(rows.end(), p.rows().begin(), p.rows().end());
  return span_rank(rows) <= 2;
}

bool coplanar(std::span<const Flat> points) {
  std::vector<Vec4> rows;
  for (const auto& p : points) rows.insert(rows.end(), p.rows().begin(), p.rows().end());
  return span_rank(rows) <= 3;
}

bool collinear(std::initializer_list<Flat> points) {
  return collinear(std::span<const Flat>(points.begin(), points.size()));
}

bool coplanar(std::initializer_list<Flat> points) {
  return coplanar(std::span<const Flat>(points.begin(), points.size()));
}

Flat dual(const Flat& f) {
  if (!f.ring().is_commutative()) throw std::invalid_argument("dual: duality requires a commutative ring");
  if (f.is_whole()) throw std::invalid_argument("dual: the whole space has no dual flat");
  // Covectors c with sum_k row[k] c_k = 0 for every row: null space of the
  // matrix whose rows are the generators, i.e. columns = transposed rows.
  const Ring ring = f.ring();
  std::vector<Vec4> columns;
  for (std::size_t k = 0; k < 4; ++k) {
    Vec4 col = make_vec(ring, 0, 0, 0, 0);
    for (std::size_t i = 0; i < f.rows().size(); ++i) col[i] = f.rows()[i][k];
    columns.push_back(col);
  }
  std::vector<Vec4> vectors;
  for (const auto& x : right_null_space(columns)) vectors.push_back({x[0], x[1], x[2], x[3]});
  return Flat::span(vectors);
}

std::vector<Flat> points_of(const Flat& f) {
  const Ring ring = f.ring();
  const auto elements = ring.elements();
  const std::size_t k = f.rows().size();
  std::vector<Flat> out;
  // Coefficient vectors whose first nonzero entry is 1 are in bijection with
  // the points of the flat.
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t tail = k - lead - 1;
    std::size_t combos = 1;
    for (std::size_t t = 0; t < tail; ++t) combos *= elements.size();
    for (std::size_t idx = 0; idx < combos; ++idx) {
      std::vector<Scalar> coeffs(k, ring.zero());
      coeffs[lead] = ring.one();
      std::size_t rest = idx;
      for (std::size_t t = 0; t < tail; ++t) {
        coeffs[lead + 1 + t] = elements[rest % elements.size()];
        rest /= elements.size();
      }
      out.push_back(point_in(f, coeffs));
    }
  }
  return out;
}

Flat point_in(const Flat& f, std::span<const Scalar> coeffs) {
  return Flat::point(combine(f.rows(), coeffs));
}

std::vector<Flat> sweep_points(const Flat& f, std::size_t limit) {
  if (f.ring().is_finite()) {
    auto all = points_of(f);
    if (all.size() > limit) all.erase(all.begin() + static_cast<std::ptrdiff_t>(limit), all.end());
    return all;
  }
  const Ring ring = f.ring();
  const std::size_t k = f.rows().size();
  std::vector<Flat> out;
  // Coefficients in growing boxes {-b..b}^k with a leading 1.
  for (long bound = 1; out.size() < limit && bound < 64; ++bound) {
    for (std::size_t lead = 0; lead < k && out.size() < limit; ++lead) {
      const std::size_t tail = k - lead - 1;
      const long width = 2 * bound + 1;
      long combos = 1;
      for (std::size_t t = 0; t < tail; ++t) combos *= width;
      for (long idx = 0; idx < combos && out.size() < limit; ++idx) {
        std::vector<Scalar> coeffs(k, ring.zero());
        coeffs[lead] = ring.one();
        long rest = idx;
        bool on_shell = bound == 1;
        for (std::size_t t = 0; t < tail; ++t) {
          const long c = rest % width - bound;
          rest /= width;
          if (c == bound || c == -bound) on_shell = true;
          coeffs[lead + 1 + t] = ring.from_int(c);
        }
        if (!on_shell) continue;
        out.push_back(point_in(f, coeffs));
      }
    }
  }
  return out;
}

}  // namespace incidence
