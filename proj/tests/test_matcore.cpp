#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nnr/matrix.hpp"
#include "nnr/matrix_io.hpp"

#include <random>

using namespace nnr;

namespace {

Matrix b1() {
  return Matrix::from_rows(std::vector<std::vector<Rational>>{
      {1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}});
}

Matrix b2() {
  return Matrix::from_rows(std::vector<std::vector<Rational>>{
      {1, 0, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 1}});
}

Matrix p_eps(const Rational& e) {
  Matrix m = Matrix::from_rows(std::vector<std::vector<Rational>>{
      {2, 0, 2, 1 - e}, {0, 2, 0, 1 + e}, {0, 0, 2, 1 + e}, {2, 2, 0, 1 - e}});
  return scale(m, Rational(1, 4));
}

Matrix random_rational_matrix(std::mt19937_64& rng, int n, int m, int maxint = 1000000) {
  std::uniform_int_distribution<int> num(-maxint, maxint);
  std::uniform_int_distribution<int> den(1, maxint);
  Matrix out(n, m, Backend::Exact);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out.set(i, j, Rational(num(rng), den(rng)));
  return out;
}

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("frobenius distance basics") {
  Matrix p = b1();
  CHECK(frobenius_distance(p, p) == 0.0);

  Matrix z(2, 2, Backend::Exact);
  Matrix ones = Matrix::from_rows(std::vector<std::vector<Rational>>{{1, 1}, {1, 1}});
  CHECK(frobenius_distance(z, ones) == doctest::Approx(2.0));

  // B1 and B2 differ in exactly four entries by one
  CHECK(frobenius_distance_sq(b1(), b2()) == Rational(4));
  CHECK(frobenius_distance(b1(), b2()) == doctest::Approx(2.0));

  Matrix wide(2, 3, Backend::Exact);
  CHECK(code_of([&] { frobenius_distance(z, wide); }) == "ShapeMismatch");
}

TEST_CASE("frobenius triangle inequality on random triples") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Matrix a = random_rational_matrix(rng, 3, 4, 50);
    Matrix b = random_rational_matrix(rng, 3, 4, 50);
    Matrix c = random_rational_matrix(rng, 3, 4, 50);
    CHECK(frobenius_distance(a, c) <= frobenius_distance(a, b) + frobenius_distance(b, c) + 1e-9);
  }
}

TEST_CASE("scaling factors") {
  Matrix d24 = Matrix::from_rows(std::vector<std::vector<Rational>>{{2, 0}, {0, 4}});
  ScalingDiag sd = scaling_factors(d24);
  REQUIRE(sd.factors.size() == 2);
  CHECK(sd.factors[0] == 2);
  CHECK(sd.factors[1] == 4);

  ScalingDiag sb = scaling_factors(b1());
  for (const auto& f : sb.factors) CHECK(f == 2);

  Matrix zc = Matrix::from_rows(std::vector<std::vector<Rational>>{{1, 0}, {1, 0}});
  CHECK(code_of([&] { scaling_factors(zc); }) == "ZeroColumn");

  Matrix neg = Matrix::from_rows(std::vector<std::vector<Rational>>{{1, -1}, {1, 1}});
  CHECK(code_of([&] { scaling_factors(neg); }) == "NegativeEntry");
}

TEST_CASE("to_stochastic") {
  Matrix d24 = Matrix::from_rows(std::vector<std::vector<Rational>>{{2, 0}, {0, 4}});
  Matrix id = to_stochastic(d24);
  CHECK(id.q(0, 0) == 1);
  CHECK(id.q(1, 1) == 1);
  CHECK(id.q(0, 1) == 0);

  Matrix half = to_stochastic(b1());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(half.q(i, j) == b1().q(i, j) / 2);

  // idempotence and unchanged stochastic input
  CHECK(to_stochastic(half) == half);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Matrix m = random_rational_matrix(rng, 4, 5, 30);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        Rational v = m.q(i, j);
        m.set(i, j, v < 0 ? Rational(-v) : Rational(v + 1));
      }
    Matrix s = to_stochastic(m);
    CHECK(to_stochastic(s) == s);
    for (int j = 0; j < s.cols(); ++j) CHECK(s.column_sum(j) == 1);
  }
}

TEST_CASE("rank on the example matrices") {
  CHECK(rank(b1()) == 3);
  CHECK(rank(p_eps(0)) == 3);
  CHECK(rank(p_eps(Rational(1, 10))) == 3);
  CHECK(rank(p_eps(Rational(1, 4))) == 3);
  CHECK(rank(Matrix(3, 3, Backend::Exact)) == 0);
  CHECK(rank(b1().to_backend(Backend::Float)) == 3);
}

TEST_CASE("rank invariances") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    Matrix m = random_rational_matrix(rng, 4, 5, 40);
    CHECK(rank(m) == rank(m.transposed()));
  }
  for (int t = 0; t < 20; ++t) {
    Matrix m = random_rational_matrix(rng, 4, 4, 20);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        Rational v = m.q(i, j);
        m.set(i, j, v < 0 ? Rational(-v) : Rational(v + 1));
      }
    CHECK(rank(to_stochastic(m)) == rank(m));
  }
}

TEST_CASE("exact and float backends agree on rank") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    Matrix m = random_rational_matrix(rng, 5, 5);
    CHECK(rank(m) == rank(m.to_backend(Backend::Float)));
  }
  // a genuinely singular case
  Matrix s = Matrix::from_rows(std::vector<std::vector<Rational>>{
      {1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(s) == 2);
  CHECK(rank(s.to_backend(Backend::Float)) == 2);
}

TEST_CASE("sample_ball contract") {
  Matrix center = to_stochastic(b1());
  BallSpec spec{center, 0.01, 10, 42};
  std::vector<Matrix> samples = sample_ball(spec);
  REQUIRE(samples.size() == 10);
  for (const auto& s : samples) {
    CHECK(s.all_nonneg());
    CHECK(frobenius_distance(center.to_backend(Backend::Float), s) < 0.01);
    CHECK(rank(s) >= 3);  // rank is lower-semicontinuous
  }
  // determinism
  std::vector<Matrix> again = sample_ball(spec);
  for (std::size_t i = 0; i < samples.size(); ++i) CHECK(samples[i] == again[i]);

  CHECK(code_of([&] { sample_ball({center, 0.0, 1, 0}); }) == "RadiusNonPositive");
  CHECK(code_of([&] { sample_ball({center, -1.0, 1, 0}); }) == "RadiusNonPositive");
}

TEST_CASE("csv round trip keeps decimals exact") {
  Matrix m = Matrix::from_rows(std::vector<std::vector<Rational>>{
      {Rational(1, 10), Rational(1, 4)}, {Rational(3), Rational(7, 20)}});
  std::string csv = write_matrix_csv(m);
  CHECK(csv == "0.1,0.25\n3,0.35\n");
  Matrix back = parse_matrix_csv(csv);
  CHECK(back == m);

  // non-terminating rationals go through 17 significant digits
  Matrix third = Matrix::from_rows(std::vector<std::vector<Rational>>{{Rational(1, 3)}});
  std::string s = write_matrix_csv(third);
  CHECK(s.find("0.333333333333333") != std::string::npos);

  CHECK(code_of([] { parse_matrix_csv("1,2\n3\n"); }) == "FormatError");
  CHECK(code_of([] { parse_matrix_csv("1,x\n"); }) == "ParseError");
}

TEST_CASE("json round trip keeps decimals exact") {
  Matrix m = Matrix::from_rows(std::vector<std::vector<Rational>>{
      {Rational(1, 10), Rational(-3, 8)}, {Rational(2), Rational(0)}});
  std::string text = write_matrix_json(m);
  JsonMatrix jm = parse_matrix_json(text);
  CHECK(jm.matrix == m);
  CHECK(jm.matrix.q(0, 0) == Rational(1, 10));

  JsonMatrix flagged = parse_matrix_json(
      "{\"rows\": 1, \"cols\": 2, \"data\": [[0.5, \"1/3\"]], \"normalize\": true}");
  CHECK(flagged.normalize);
  CHECK(flagged.matrix.q(0, 1) == Rational(1, 3));

  CHECK(code_of([] { parse_matrix_json("{\"rows\": 2, \"cols\": 1, \"data\": [[1]]}"); }) ==
        "FormatError");
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-2.5e-2") == Rational(-1, 40));
  CHECK(parse_rational("1e3") == Rational(1000));
  CHECK(parse_rational("22/7") == Rational(22, 7));
  CHECK(format_rational(Rational(1, 8)) == "0.125");
  CHECK(format_rational(Rational(-7, 50)) == "-0.14");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(rational_from_double(0.5) == Rational(1, 2));
}
