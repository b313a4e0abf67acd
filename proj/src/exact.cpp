#include "ornament/exact.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

namespace ornament {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void require_same_length(const Vector& a, const Vector& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(op) + ": length " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

// Integer matrix with each rational row scaled by the lcm of its denominators.
// Positive row scaling keeps the determinant sign and the solution set.
std::vector<mpz_class> integral_rows(const Matrix& a, const Vector* rhs) {
  const std::size_t n = a.rows();
  const std::size_t width = a.cols() + (rhs ? 1 : 0);
  std::vector<mpz_class> out(n * width);
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    if (rhs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*rhs)[r].get_den_mpz_t());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out[r * width + c] = a(r, c).get_num() * (l / a(r, c).get_den());
    }
    if (rhs) out[r * width + a.cols()] = (*rhs)[r].get_num() * (l / (*rhs)[r].get_den());
  }
  return out;
}

// Fraction-free echelon form in place (Bareiss with column skipping). Every
// division is exact because each entry stays a minor of the input. Returns
// the pivot column of each pivot row; `swaps` counts row exchanges.
std::vector<std::size_t> bareiss_echelon(std::vector<mpz_class>& m, std::size_t rows, std::size_t width,
                                         std::size_t& swaps) {
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return m[r * width + c]; };
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  mpz_class tmp;
  std::size_t row = 0;
  swaps = 0;
  for (std::size_t col = 0; col < width && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && sgn(at(pivot, col)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < width; ++c) std::swap(at(pivot, c), at(row, c));
      ++swaps;
    }
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < width; ++j) {
        tmp = at(i, j) * at(row, col);
        tmp -= at(i, col) * at(row, j);
        mpz_divexact(at(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, col) = 0;
    }
    prev = at(row, col);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Determinant sign of the leading n x n block given its echelon form.
int echelon_det_sign(const std::vector<mpz_class>& m, std::size_t n, std::size_t width,
                     const std::vector<std::size_t>& pivots, std::size_t swaps) {
  if (pivots.size() < n || pivots[n - 1] != n - 1) return 0;
  const int s = sgn(m[(n - 1) * width + (n - 1)]);
  return swaps % 2 == 0 ? s : -s;
}

}  // namespace

Scalar parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational literal \"" + std::string(text) + "\"");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  if (negative) p = -p;
  Scalar value(p, q);
  value.canonicalize();
  return value;
}

Scalar ratio(long p, long q) {
  if (q == 0) throw ContractViolation("ratio: zero denominator");
  Scalar r{mpz_class(p), mpz_class(q)};
  r.canonicalize();
  return r;
}

std::string format_rational(const Scalar& value) { return value.get_str(10); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DimensionError("Matrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector Matrix::operator*(const Vector& x) const {
  if (x.size() != cols_) throw DimensionError("Matrix * Vector: shape mismatch");
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("Matrix * Matrix: shape mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      Scalar acc = 0;
      for (std::size_t i = 0; i < cols_; ++i) acc += (*this)(r, i) * other(i, c);
      out(r, c) = acc;
    }
  return out;
}

Vector add(const Vector& a, const Vector& b) {
  require_same_length(a, b, "add");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  require_same_length(a, b, "sub");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(const Scalar& s, const Vector& a) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Scalar dot(const Vector& a, const Vector& b) {
  require_same_length(a, b, "dot");
  Scalar acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Vector zeros(std::size_t n) { return Vector(n, Scalar(0)); }

bool is_zero(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

int det_sign(const Matrix& m) {
  if (!m.square()) throw DimensionError("det_sign: matrix is not square");
  if (m.rows() == 0) return 1;
  auto ints = integral_rows(m, nullptr);
  std::size_t swaps = 0;
  const auto pivots = bareiss_echelon(ints, m.rows(), m.cols(), swaps);
  return echelon_det_sign(ints, m.rows(), m.cols(), pivots, swaps);
}

SolveResult solve_with_sign(const Matrix& a, const Vector& b) {
  if (!a.square()) throw DimensionError("solve: matrix is not square");
  if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
  const std::size_t n = a.rows();
  if (n == 0) return {1, {}};
  const std::size_t width = n + 1;
  auto m = integral_rows(a, &b);
  SolveResult result;
  std::size_t swaps = 0;
  const auto pivots = bareiss_echelon(m, n, width, swaps);
  result.det_sign = echelon_det_sign(m, n, width, pivots, swaps);
  if (result.det_sign == 0) {
    result.consistent = pivots.empty() || pivots.back() != n;
    return result;
  }
  result.x.assign(n, Scalar(0));
  for (std::size_t i = n; i-- > 0;) {
    Scalar acc(m[i * width + n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Scalar(m[i * width + j]) * result.x[j];
    result.x[i] = acc / Scalar(m[i * width + i]);
  }
  return result;
}

std::optional<Vector> solve_affine(const Matrix& a, const Vector& b) {
  auto r = solve_with_sign(a, b);
  if (r.det_sign == 0) return std::nullopt;
  return std::move(r.x);
}

Position barycentric_position(std::span<const Scalar> coords) {
  Scalar total = 0;
  bool any_zero = false;
  bool any_negative = false;
  for (const auto& c : coords) {
    total += c;
    const int s = sgn(c);
    any_zero |= s == 0;
    any_negative |= s < 0;
  }
  if (total != 1) throw ContractViolation("barycentric_position: coordinates do not sum to 1");
  if (any_negative) return Position::outside;
  return any_zero ? Position::boundary : Position::interior;
}

Vector complete_barycentric(std::span<const Scalar> params) {
  Vector full(params.begin(), params.end());
  Scalar last = 1;
  for (const auto& p : params) last -= p;
  full.push_back(std::move(last));
  return full;
}

std::uint64_t SeededRng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SeededRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ContractViolation("SeededRng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  SeededRng rng(seed ^ (salt * 0xD1B54A32D192ED03ULL));
  rng.next();
  return rng.next();
}

Vector random_rational_perturbation(const Vector& v, const Scalar& eps, std::uint64_t seed,
                                    std::int64_t denominator_limit) {
  if (sgn(eps) <= 0) throw ContractViolation("random_rational_perturbation: eps must be positive");
  if (denominator_limit < 2) throw ContractViolation("random_rational_perturbation: denominator limit < 2");
  SeededRng rng(seed);
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t n = rng.uniform(-(denominator_limit - 1), denominator_limit - 2);
    if (n >= 0) ++n;  // skip zero
    out[i] = v[i] + eps * ratio(static_cast<long>(n), static_cast<long>(denominator_limit));
  }
  return out;
}

Scalar sup_distance(const Vector& a, const Vector& b) {
  require_same_length(a, b, "sup_distance");
  Scalar best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Scalar d = abs(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

Scalar approx_sqrt(const Scalar& x, unsigned bits) {
  if (sgn(x) < 0) throw ContractViolation("approx_sqrt: negative argument");
  // sqrt(p/q) = sqrt(p q) / q
  mpz_class radicand = x.get_num() * x.get_den();
  mpz_mul_2exp(radicand.get_mpz_t(), radicand.get_mpz_t(), 2 * bits);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  mpz_class den = x.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  Scalar r(root, den);
  r.canonicalize();
  return r;
}

}  // namespace ornament
