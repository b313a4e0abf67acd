#include <doctest.h>

#include "oracles.hpp"
#include "ornament/exact.hpp"

using namespace ornament;

namespace {

Matrix random_matrix(std::size_t n, std::uint64_t seed, long range = 9) {
  SeededRng rng(seed);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = ratio(rng.uniform(-range, range), rng.uniform(1, 5));
  return m;
}

}  // namespace

TEST_CASE("parse and format rationals") {
  CHECK(parse_rational("2/4") == ratio(1, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(format_rational(parse_rational("-6/3")) == "-2");
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"3/0", "1/-2", "", "/3", "1/", "a", "1.5", "1//2", "+-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
}

TEST_CASE("format is canonical") {
  CHECK(format_rational(ratio(4, -6)) == "-2/3");
  CHECK(format_rational(ratio(0, 5)) == "0");
  CHECK(parse_rational(format_rational(ratio(355, 113))) == ratio(355, 113));
}

TEST_CASE("det_sign examples") {
  CHECK(det_sign(Matrix::identity(3)) == 1);
  CHECK(det_sign(Matrix::from_rows({{1, 2}, {2, 4}})) == 0);
  CHECK(det_sign(Matrix::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(det_sign(Matrix::from_rows({{ratio(1, 3), 5}, {ratio(-1, 7), ratio(2, 9)}})) == 1);
}

TEST_CASE("det_sign agrees with plain elimination, transposes and products") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 1 + s % 7;
    Matrix a = random_matrix(n, s);
    if (s % 5 == 0) {
      for (std::size_t c = 0; c < n; ++c) a(n - 1, c) = a(0, c) * 3;  // force singular
    }
    const Matrix b = random_matrix(n, s + 1000);
    CAPTURE(s);
    CHECK(det_sign(a) == oracle::det_sign(a));
    CHECK(det_sign(a) == det_sign(a.transposed()));
    CHECK(det_sign(a * b) == det_sign(a) * det_sign(b));
  }
}

TEST_CASE("solve recovers a constructed solution") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Matrix a = random_matrix(4, 77 + s);
    if (oracle::det_sign(a) == 0) continue;
    SeededRng rng(s);
    Vector x(4);
    for (auto& v : x) v = ratio(rng.uniform(-50, 50), rng.uniform(1, 40));
    const Vector b = a * x;
    const auto got = solve_affine(a, b);
    REQUIRE(got);
    CHECK(*got == x);
    CHECK(a * *got == b);
    const SolveResult r = solve_with_sign(a, b);
    CHECK(r.det_sign == oracle::det_sign(a));
    CHECK(r.x == x);
  }
}

TEST_CASE("singular systems report solvability") {
  const Matrix a = Matrix::from_rows({{1, 2}, {2, 4}});
  CHECK_FALSE(solve_affine(a, {1, 2}));
  CHECK(solve_with_sign(a, {1, 2}).consistent);
  CHECK_FALSE(solve_with_sign(a, {1, 3}).consistent);
  CHECK(solve_with_sign(Matrix(3, 3), {0, 0, 0}).consistent);
}

TEST_CASE("barycentric classification") {
  CHECK(barycentric_position(Vector{ratio(1, 3), ratio(1, 3), ratio(1, 3)}) == Position::interior);
  CHECK(barycentric_position(Vector{0, ratio(1, 2), ratio(1, 2)}) == Position::boundary);
  CHECK(barycentric_position(Vector{ratio(-1, 4), ratio(1, 2), ratio(3, 4)}) == Position::outside);
  CHECK_THROWS_AS(barycentric_position(Vector{ratio(1, 2), ratio(1, 3)}), ContractViolation);
  CHECK(complete_barycentric(Vector{ratio(1, 4), ratio(1, 2)}) == Vector{ratio(1, 4), ratio(1, 2), ratio(1, 4)});
}

TEST_CASE("perturbation bound, determinism and denominators") {
  const Vector origin = zeros(2);
  const Scalar eps = ratio(1, 10);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Vector p = random_rational_perturbation(origin, eps, s);
    CHECK(sup_distance(p, origin) < eps);
    CHECK(p != origin);
    CHECK(p == random_rational_perturbation(origin, eps, s));
    for (const auto& x : p) CHECK(x.get_den() <= 10 * kDefaultPerturbationDenominator);
  }
  const Vector v{ratio(3, 7), -2, ratio(5, 9)};
  const Scalar tiny = ratio(1, 1000000007);
  CHECK(sup_distance(random_rational_perturbation(v, tiny, 9), v) < tiny);
  CHECK_THROWS_AS(random_rational_perturbation(v, 0, 1), ContractViolation);
  CHECK_THROWS_AS(random_rational_perturbation(v, -1, 1), ContractViolation);
}

TEST_CASE("approx_sqrt is within the requested bound") {
  for (long n : {2L, 3L, 6L, 9L, 12L}) {
    const Scalar r = approx_sqrt(Scalar(n), 30);
    const Scalar bound = Scalar(1) / (mpz_class(1) << 30);
    // |r - sqrt(n)| < bound  <=>  (r - bound)^2 < n < (r + bound)^2 for r > bound
    CHECK((r - bound) * (r - bound) < n);
    CHECK(n < (r + bound) * (r + bound));
  }
}

TEST_CASE("vector helpers check lengths") {
  CHECK_THROWS_AS(add(zeros(2), zeros(3)), DimensionError);
  CHECK(dot(Vector{1, 2}, Vector{3, 4}) == 11);
  CHECK(is_zero(sub(Vector{1, 2}, Vector{1, 2})));
}
