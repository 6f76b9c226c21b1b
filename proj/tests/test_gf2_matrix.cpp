#include <doctest.h>

#include <random>

#include "wrb/errors.hpp"
#include "wrb/gf2_matrix.hpp"

using wrb::GF2Matrix;

namespace {

GF2Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  GF2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1) m.set(i, j, true);
  return m;
}

// Naive schoolbook product used as the oracle for the packed implementation.
GF2Matrix naive_mul(const GF2Matrix& a, const GF2Matrix& b) {
  GF2Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool v = false;
      for (std::size_t k = 0; k < a.cols(); ++k) v ^= a.get(i, k) && b.get(k, j);
      out.set(i, j, v);
    }
  return out;
}

} // namespace

TEST_CASE("gf2: get/set/flip round trip across word boundaries") {
  GF2Matrix m(3, 130);
  m.set(0, 0, true);
  m.set(1, 63, true);
  m.set(1, 64, true);
  m.set(2, 129, true);
  CHECK(m.get(0, 0));
  CHECK(m.get(1, 63));
  CHECK(m.get(1, 64));
  CHECK(m.get(2, 129));
  CHECK_FALSE(m.get(0, 1));
  m.flip(2, 129);
  CHECK_FALSE(m.get(2, 129));
  m.set(1, 63, false);
  CHECK_FALSE(m.get(1, 63));
  CHECK(m.get(1, 64));
}

TEST_CASE("gf2: product matches schoolbook oracle") {
  std::mt19937_64 rng(12345);
  const std::size_t dims[4][3] = {{2, 3, 2}, {5, 7, 4}, {17, 65, 9}, {70, 70, 70}};
  for (const auto& d : dims) {
    GF2Matrix a = random_matrix(d[0], d[1], rng);
    GF2Matrix b = random_matrix(d[1], d[2], rng);
    CHECK(a * b == naive_mul(a, b));
  }
}

TEST_CASE("gf2: identity and distributivity") {
  std::mt19937_64 rng(99);
  GF2Matrix a = random_matrix(9, 9, rng);
  GF2Matrix b = random_matrix(9, 9, rng);
  GF2Matrix c = random_matrix(9, 9, rng);
  GF2Matrix id = GF2Matrix::identity(9);
  CHECK(a * id == a);
  CHECK(id * a == a);
  CHECK(a * (b + c) == a * b + a * c);
  CHECK((a + b) * c == a * c + b * c);
}

TEST_CASE("gf2: transpose") {
  std::mt19937_64 rng(7);
  GF2Matrix a = random_matrix(5, 70, rng);
  GF2Matrix b = random_matrix(70, 6, rng);
  CHECK(a.transpose().transpose() == a);
  CHECK((a * b).transpose() == b.transpose() * a.transpose());
}

TEST_CASE("gf2: rank and echelon form") {
  // rows 2 and 3 sum to row 1, so rank 2
  GF2Matrix m(3, 4);
  m.set(0, 0, true);
  m.set(0, 2, true);
  m.set(1, 0, true);
  m.set(1, 1, true);
  m.set(2, 1, true);
  m.set(2, 2, true);
  CHECK(m.rank() == 2);
  std::vector<std::size_t> pivots;
  GF2Matrix e = m;
  CHECK(e.echelonize(&pivots) == 2);
  CHECK(pivots.size() == 2);
  CHECK(pivots[0] == 0);
  CHECK(pivots[1] == 1);
  CHECK(e.row_is_zero(2));
  CHECK(GF2Matrix::identity(64).rank() == 64);
  CHECK(GF2Matrix(4, 4).rank() == 0);
}

TEST_CASE("gf2: nullspace rows solve A x = 0 and have the right count") {
  std::mt19937_64 rng(2024);
  const std::size_t dims[3][2] = {{6, 9}, {20, 13}, {33, 70}};
  for (const auto& d : dims) {
    GF2Matrix a = random_matrix(d[0], d[1], rng);
    GF2Matrix ns = a.nullspace();
    CHECK(ns.rows() == d[1] - a.rank());
    CHECK(ns.rank() == ns.rows());
    for (std::size_t i = 0; i < ns.rows(); ++i) {
      // check A * x == 0 column by column
      for (std::size_t row = 0; row < a.rows(); ++row) {
        bool v = false;
        for (std::size_t col = 0; col < a.cols(); ++col)
          v ^= a.get(row, col) && ns.get(i, col);
        CHECK_FALSE(v);
      }
    }
  }
}

TEST_CASE("gf2: inverse") {
  std::mt19937_64 rng(555);
  int found = 0;
  while (found < 4) {
    GF2Matrix a = random_matrix(12, 12, rng);
    if (!a.is_invertible()) continue;
    ++found;
    GF2Matrix inv = a.inverse();
    CHECK(a * inv == GF2Matrix::identity(12));
    CHECK(inv * a == GF2Matrix::identity(12));
  }
  GF2Matrix sing(3, 3);
  sing.set(0, 0, true);
  sing.set(1, 0, true); // duplicate column pattern, rank <= 2
  CHECK_FALSE(sing.is_invertible());
  CHECK_THROWS_AS((void)sing.inverse(), wrb::domain_error);
}

TEST_CASE("gf2: pow") {
  std::mt19937_64 rng(31);
  GF2Matrix a = random_matrix(8, 8, rng);
  CHECK(a.pow(0) == GF2Matrix::identity(8));
  CHECK(a.pow(1) == a);
  GF2Matrix cur = GF2Matrix::identity(8);
  for (int k = 1; k <= 9; ++k) {
    cur = cur * a;
    CHECK(a.pow(k) == cur);
  }
}

TEST_CASE("gf2: vstack and submatrix") {
  std::mt19937_64 rng(8);
  GF2Matrix a = random_matrix(3, 10, rng);
  GF2Matrix b = random_matrix(2, 10, rng);
  GF2Matrix s = GF2Matrix::vstack(a, b);
  CHECK(s.rows() == 5);
  for (std::size_t j = 0; j < 10; ++j) {
    CHECK(s.get(0, j) == a.get(0, j));
    CHECK(s.get(4, j) == b.get(1, j));
  }
  GF2Matrix sub = s.submatrix({0, 4}, {1, 3, 9});
  CHECK(sub.rows() == 2);
  CHECK(sub.cols() == 3);
  CHECK(sub.get(0, 0) == a.get(0, 1));
  CHECK(sub.get(1, 2) == b.get(1, 9));
}

TEST_CASE("gf2: row space basis and expressing vectors") {
  std::mt19937_64 rng(404);
  GF2Matrix a = random_matrix(9, 20, rng);
  GF2Matrix basis = wrb::row_space_basis(a);
  CHECK(basis.rows() == a.rank());
  // every original row is expressible, and the coefficients reproduce it
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto coeff = wrb::express_in_rows(basis, a.row(i), a.cols());
    REQUIRE(!coeff.empty());
    GF2Matrix acc(1, a.cols());
    for (std::size_t j = 0; j < basis.rows(); ++j)
      if (coeff[j]) acc.xor_row_from(0, basis, j);
    for (std::size_t cidx = 0; cidx < a.cols(); ++cidx) CHECK(acc.get(0, cidx) == a.get(i, cidx));
  }
  // a vector outside the span comes back empty
  if (basis.rows() < a.cols()) {
    GF2Matrix probe(1, a.cols());
    bool found_outside = false;
    for (std::size_t c = 0; c < a.cols() && !found_outside; ++c) {
      probe = GF2Matrix(1, a.cols());
      probe.set(0, c, true);
      if (wrb::express_in_rows(basis, probe.row(0), a.cols()).empty()) found_outside = true;
    }
    CHECK(found_outside); // rank-deficient span must miss some unit vector
  }
}

TEST_CASE("gf2: mul_vector agrees with matrix product") {
  std::mt19937_64 rng(1717);
  GF2Matrix a = random_matrix(11, 70, rng);
  GF2Matrix x = random_matrix(70, 1, rng);
  std::vector<uint64_t> packed((70 + 63) / 64, 0);
  for (std::size_t i = 0; i < 70; ++i)
    if (x.get(i, 0)) packed[i >> 6] |= uint64_t(1) << (i & 63);
  auto out = a.mul_vector(packed);
  GF2Matrix expect = a * x;
  for (std::size_t i = 0; i < 11; ++i)
    CHECK(((out[i >> 6] >> (i & 63)) & 1) == (expect.get(i, 0) ? 1u : 0u));
}

TEST_CASE("gf2: xor_row and swap_rows") {
  GF2Matrix m(2, 100);
  m.set(0, 5, true);
  m.set(0, 99, true);
  m.set(1, 5, true);
  m.xor_row(1, 0);
  CHECK_FALSE(m.get(1, 5));
  CHECK(m.get(1, 99));
  m.swap_rows(0, 1);
  CHECK(m.get(0, 99));
  CHECK_FALSE(m.get(0, 5));
  CHECK(m.get(1, 5));
}
