#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quivermod/field.hpp"
#include "quivermod/matrix.hpp"

using namespace quivermod;

namespace {

template <class F>
Matrix<F> from_rows(const F& f, std::vector<std::vector<long>> rows) {
  int nr = int(rows.size());
  int nc = nr ? int(rows[0].size()) : 0;
  Matrix<F> m(f, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m.at(i, j) = f.from_int(rows[i][j]);
  return m;
}

template <class F>
Matrix<F> random_matrix(const F& f, int r, int c, std::mt19937_64& rng) {
  Matrix<F> m(f, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = f.sample(rng);
  return m;
}

}  // namespace

TEMPLATE_TEST_CASE("basic matrix arithmetic", "", FpField, QField) {
  TestType f;
  auto a = from_rows(f, {{1, 2}, {3, 4}});
  auto b = from_rows(f, {{0, 1}, {1, 0}});
  CHECK(a.mul(b) == from_rows(f, {{2, 1}, {4, 3}}));
  CHECK(a.add(b) == from_rows(f, {{1, 3}, {4, 4}}));
  CHECK(a.sub(a).is_zero());
  CHECK(a.transpose() == from_rows(f, {{1, 3}, {2, 4}}));
  CHECK(a.scale(f.from_int(2)) == from_rows(f, {{2, 4}, {6, 8}}));
  CHECK(Matrix<TestType>::identity(f, 2).mul(a) == a);
  CHECK(a.hstack(b).cols() == 4);
  CHECK(a.vstack(b).rows() == 4);
  CHECK(a.hstack(b).submatrix(0, 2, 2, 2) == b);
}

TEMPLATE_TEST_CASE("rank, rref, inverse", "", FpField, QField) {
  TestType f;
  auto a = from_rows(f, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(a.rank() == 2);
  auto inv_able = from_rows(f, {{2, 1}, {1, 1}});
  CHECK(inv_able.is_invertible());
  CHECK(inv_able.inverse().mul(inv_able) ==
        Matrix<TestType>::identity(f, 2));
  CHECK(!a.is_invertible());
  CHECK_THROWS(a.inverse());

  auto b = from_rows(f, {{0, 2, 4}, {1, 1, 1}});
  Matrix<TestType> r = b;
  std::vector<int> pivots = r.rref();
  CHECK(pivots == std::vector<int>{0, 1});
  CHECK(r == from_rows(f, {{1, 0, -1}, {0, 1, 2}}));
}

TEMPLATE_TEST_CASE("kernels annihilate and have complementary rank", "",
                   FpField, QField) {
  TestType f;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int r = 1 + int(rng() % 5);
    int c = 1 + int(rng() % 5);
    auto m = random_matrix(f, r, c, rng);
    auto k = m.kernel_basis();
    CHECK(k.rows() == c);
    CHECK(k.cols() == c - m.rank());
    if (k.cols() > 0) {
      CHECK(m.mul(k).is_zero());
      CHECK(k.rank() == k.cols());
    }
    auto lk = m.left_kernel_basis();
    CHECK(lk.cols() == r);
    CHECK(lk.rows() == r - m.rank());
    if (lk.rows() > 0) {
      CHECK(lk.mul(m).is_zero());
      CHECK(lk.rank() == lk.rows());
    }
  }
}

TEMPLATE_TEST_CASE("solve_unique inverts matrix application", "", FpField,
                   QField) {
  TestType f;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    // Build a full-column-rank matrix by stacking an identity under noise.
    int c = 1 + int(rng() % 4);
    int extra = int(rng() % 3);
    auto m = Matrix<TestType>::identity(f, c);
    if (extra > 0) m = m.vstack(random_matrix(f, extra, c, rng));
    auto x = random_matrix(f, c, 2, rng);
    auto b = m.mul(x);
    CHECK(m.solve_unique(b) == x);
  }
  // No solution and non-unique solution both throw.
  auto wide = from_rows(f, {{1, 1}});
  CHECK_THROWS(wide.solve_unique(from_rows(f, {{1}})));
  auto tall = from_rows(f, {{1}, {1}});
  CHECK_THROWS(tall.solve_unique(from_rows(f, {{1}, {2}})));
}

TEST_CASE("prime field arithmetic") {
  FpField f(7);
  CHECK(f.from_int(-1) == 6u);
  CHECK(f.mul(f.from_int(3), f.from_int(5)) == 1u);
  CHECK(f.inv(f.from_int(3)) == 5u);
  CHECK(f.add(f.from_int(6), f.from_int(3)) == 2u);
  CHECK(f.str(f.from_int(4)) == "4");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    auto x = f.sample(rng);
    if (!f.is_zero(x)) CHECK(f.mul(x, f.inv(x)) == f.one());
  }
}

TEST_CASE("rational field arithmetic") {
  QField f;
  auto half = f.mul(f.one(), f.inv(f.from_int(2)));
  CHECK(f.add(half, half) == f.one());
  CHECK(f.str(half) == "1/2");
  CHECK(f.neg(f.from_int(3)) == f.from_int(-3));
}
