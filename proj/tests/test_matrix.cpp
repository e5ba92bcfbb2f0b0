#include <array>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "ika/matrix.hpp"
#include "ika/rng.hpp"
#include "test_support.hpp"

using ika::Matrix;
using ika::SymmetricMatrix;

TEST_SUITE("matrix") {
  TEST_CASE("identity and element access") {
    const Matrix i3 = Matrix::identity(3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) CHECK(i3(r, c) == (r == c ? 1.0 : 0.0));
    }
  }

  TEST_CASE("matmul and transpose agree with the Eigen oracle") {
    ika::Rng rng(11);
    const Matrix a = test_support::random_matrix(7, 5, rng);
    const Matrix b = test_support::random_matrix(5, 9, rng);
    const Matrix c = ika::matmul(a, b);
    const Eigen::MatrixXd oracle = test_support::to_eigen(a) * test_support::to_eigen(b);
    REQUIRE(c.rows() == 7);
    REQUIRE(c.cols() == 9);
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < c.cols(); ++j) {
        CHECK(c(i, j) == doctest::Approx(oracle(i, j)).epsilon(1e-13));
      }
    }
    const Matrix at = ika::transpose(a);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) CHECK(at(j, i) == a(i, j));
    }
  }

  TEST_CASE("matmul rejects mismatched shapes") {
    CHECK_THROWS(ika::matmul(Matrix(2, 3), Matrix(4, 2)));
  }

  TEST_CASE("from_upper mirrors the upper triangle bit-exactly") {
    Matrix a(3, 3);
    double v = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = (v += 0.1);
    }
    const SymmetricMatrix s = SymmetricMatrix::from_upper(a);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(s(i, j) == s(j, i));  // bitwise, not approximate
        if (i <= j) CHECK(s(i, j) == a(i, j));
      }
    }
  }

  TEST_CASE("from_upper rejects non-square and non-finite input") {
    CHECK_THROWS(SymmetricMatrix::from_upper(Matrix(2, 3)));
    Matrix bad(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(SymmetricMatrix::from_upper(bad));
  }

  TEST_CASE("squared_distance is the direct difference sum") {
    const std::array<double, 3> x{1.0, 2.0, 3.0}, y{4.0, 6.0, 3.0};
    CHECK(ika::squared_distance(x, y) == doctest::Approx(9.0 + 16.0).epsilon(1e-15));
    CHECK(ika::dot(x, y) == doctest::Approx(4.0 + 12.0 + 9.0).epsilon(1e-15));
  }

  TEST_CASE("select_rows gathers and bounds-checks") {
    ika::Rng rng(12);
    const Matrix a = test_support::random_matrix(6, 4, rng);
    const std::vector<std::size_t> idx{5, 0, 5};
    const Matrix picked = ika::select_rows(a, idx);
    REQUIRE(picked.rows() == 3);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(picked(0, j) == a(5, j));
      CHECK(picked(1, j) == a(0, j));
      CHECK(picked(2, j) == a(5, j));
    }
    const std::vector<std::size_t> bad{6};
    CHECK_THROWS(ika::select_rows(a, bad));
  }

  TEST_CASE("equality is bitwise") {
    ika::Rng rng(13);
    Matrix a = test_support::random_matrix(3, 3, rng);
    Matrix b = a;
    CHECK(a == b);
    b(2, 2) = std::nextafter(b(2, 2), 1e300);
    CHECK_FALSE(a == b);
  }

  TEST_CASE("trace sums the diagonal") {
    Matrix a(2, 2);
    a(0, 0) = 1.5;
    a(1, 1) = 2.5;
    a(0, 1) = a(1, 0) = 9.0;
    CHECK(SymmetricMatrix::from_upper(a).trace() == 4.0);
  }
}
