#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quivermod/normalform.hpp"

using namespace quivermod;

namespace {

const FpField F32;

Matrix<FpField> random_invertible(int n, std::mt19937_64& rng) {
  while (true) {
    Matrix<FpField> g(F32, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.at(i, j) = F32.sample(rng);
    if (g.is_invertible()) return g;
  }
}

}  // namespace

TEST_CASE("perpendicular pair arithmetic") {
  auto [c1, d1] = perp_pair(3, 1, 1);
  CHECK(c1 == 2);
  CHECK(d1 == 5);
  auto [c2, d2] = perp_pair(3, 2, 3);
  CHECK(c2 == 5);
  CHECK(d2 == 12);

  SECTION("defining identity and window hold in general") {
    for (int n = 2; n <= 5; ++n)
      for (Int a = 0; a <= 6; ++a)
        for (Int b = 1; b <= 6; ++b) {
          if (std::gcd(a, b) != 1 || a > b || 2 * b > Int(n) * a) continue;
          auto [c, d] = perp_pair(n, a, b);
          CHECK(d * b - c * (Int(n) * b - a) == 1);
          CHECK(a < c);
          CHECK(c <= a + b);
        }
  }

  SECTION("bad inputs") {
    CHECK_THROWS_AS(perp_pair(0, 1, 1), input_error);
    CHECK_THROWS_AS(perp_pair(3, 2, 2), input_error);   // gcd 2
    CHECK_THROWS_AS(perp_pair(3, 1, 2), input_error);   // outside 2b <= na
    CHECK_THROWS_AS(perp_pair(3, -1, 2), input_error);
    CHECK_THROWS_AS(perp_pair(3, 2, 1), input_error);   // needs a <= b
  }
}

TEST_CASE("tilting pair for the smallest non-isotropic root") {
  TiltingPair<FpField> tp =
      build_tilting_pair(F32, 3, DimVec({1, 1}), /*seed=*/42);
  CHECK(tp.n == 3);
  CHECK(tp.p == 2);
  CHECK(tp.ab == DimVec({1, 1}));
  CHECK(tp.cd == DimVec({2, 5}));
  CHECK(tp.S.dims == DimVec({2, 5}));
  CHECK(tp.T.dims == DimVec({5, 11}));
  CHECK(tp.homST_basis.size() == 3);  // 1 + p

  // The certified numerology holds on the constructed objects.
  std::mt19937_64 rng(1);
  Rep<FpField> r = random_rep(F32, kronecker_quiver(3), DimVec({1, 1}), rng);
  CHECK(hom_dim(tp.S, r) == 1);
  CHECK(ext_dim(tp.S, r) == 0);
  CHECK(hom_dim(tp.T, r) == 1);
  CHECK(ext_dim(tp.T, r) == 0);
  CHECK(hom_dim(tp.S, tp.T) == 1 + tp.p);
  CHECK(end_dim(tp.S) == 1);
  // (2,5) pairs with itself to -1 under the euler form, so a general
  // representation has end = 1 and ext = 1 - (-1) = 2.
  CHECK(ext_dim(tp.S, tp.S) == 2);
}

TEST_CASE("kronecker reduction round-trips") {
  Quiver q3 = kronecker_quiver(3);
  TiltingPair<FpField> tp = build_tilting_pair(F32, 3, DimVec({1, 1}), 42);

  SECTION("indivisible case h = 1") {
    std::mt19937_64 rng(2);
    Rep<FpField> r = random_rep(F32, q3, DimVec({1, 1}), rng);
    Rep<FpField> m = reduce_to_kronecker(tp, r);
    CHECK(m.dims == DimVec({1, 1}));
    CHECK(m.quiver.num_arrows() == 3);
    Rep<FpField> back = inverse_from_kronecker(tp, m);
    CHECK(back.dims == DimVec({1, 1}));
    CHECK(is_isomorphic(r, back, std::uint64_t{77}));
  }

  SECTION("divisible case h = 2") {
    std::mt19937_64 rng(3);
    Rep<FpField> r = random_rep(F32, q3, DimVec({2, 2}), rng);
    Rep<FpField> m = reduce_to_kronecker(tp, r);
    CHECK(m.dims == DimVec({2, 2}));
    Rep<FpField> back = inverse_from_kronecker(tp, m);
    CHECK(is_isomorphic(r, back, std::uint64_t{77}));
  }

  SECTION("reverse direction: matrices, representation, matrices") {
    std::mt19937_64 rng(4);
    Rep<FpField> m =
        random_rep(F32, kronecker_quiver(1 + int(tp.p)), DimVec({2, 2}), rng);
    Rep<FpField> r = inverse_from_kronecker(tp, m);
    CHECK(r.dims == DimVec({2, 2}));
    Rep<FpField> again = reduce_to_kronecker(tp, r);
    CHECK(is_isomorphic(m, again, std::uint64_t{77}));
  }

  SECTION("dimension mismatches are rejected") {
    std::mt19937_64 rng(5);
    Rep<FpField> bad = random_rep(F32, q3, DimVec({1, 2}), rng);
    CHECK_THROWS_AS(reduce_to_kronecker(tp, bad), input_error);
    Rep<FpField> badm =
        random_rep(F32, kronecker_quiver(1 + int(tp.p)), DimVec({1, 2}), rng);
    CHECK_THROWS_AS(inverse_from_kronecker(tp, badm), input_error);
  }
}

TEST_CASE("normal form matrices") {
  SECTION("first matrix singular is a genericity failure") {
    Rep<FpField> z = zero_rep(F32, kronecker_quiver(3), DimVec({2, 2}));
    CHECK_THROWS_AS(matrices_normal_form(z), genericity_error);
  }

  SECTION("covariance under simultaneous conjugation") {
    std::mt19937_64 rng(6);
    Quiver q = kronecker_quiver(3);
    for (int trial = 0; trial < 5; ++trial) {
      Rep<FpField> m = random_rep(F32, q, DimVec({3, 3}), rng);
      auto nf = matrices_normal_form(m);
      REQUIRE(nf.size() == 2);

      Matrix<FpField> gv = random_invertible(3, rng);
      Matrix<FpField> gw = random_invertible(3, rng);
      Rep<FpField> conj = m;
      for (auto& mat : conj.mats) mat = gw.mul(mat).mul(gv.inverse());
      auto nf2 = matrices_normal_form(conj);

      // M(a0)^-1 M(ai) transforms by conjugation with the source-side change
      // of basis only.
      for (std::size_t i = 0; i < nf.size(); ++i)
        CHECK(nf2[i] == gv.mul(nf[i]).mul(gv.inverse()));
    }
  }
}

TEST_CASE("rationality flags follow the divisibility rules") {
  using Flags = std::vector<std::string>;
  Flags all = {"rational", "stably_rational", "retract_rational"};
  CHECK(rationality_flags(1) == all);
  CHECK(rationality_flags(2) == all);
  CHECK(rationality_flags(3) == all);
  CHECK(rationality_flags(4) == all);
  CHECK(rationality_flags(5) == Flags{"stably_rational", "retract_rational"});
  CHECK(rationality_flags(6) == Flags{"stably_rational", "retract_rational"});
  CHECK(rationality_flags(7) == Flags{"stably_rational", "retract_rational"});
  CHECK(rationality_flags(8) == Flags{"unknown"});
  CHECK(rationality_flags(9) == Flags{"unknown"});
  CHECK(rationality_flags(10) == Flags{"stably_rational", "retract_rational"});
  CHECK(rationality_flags(105) == Flags{"stably_rational", "retract_rational"});
  CHECK(rationality_flags(11) == Flags{"retract_rational"});  // 11 nmid 420
}

TEST_CASE("moduli report") {
  Quiver q3 = kronecker_quiver(3);
  ModuliReport r = moduli_report(q3, DimVec({2, 2}));
  CHECK(r.h == 2);
  CHECK(r.p == 2);
  CHECK(r.model == "2 matrices of size 2x2 up to simultaneous conjugacy");
  CHECK(r.flags ==
        std::vector<std::string>{"rational", "stably_rational",
                                 "retract_rational"});

  ModuliReport r5 = moduli_report(q3, DimVec({5, 5}));
  CHECK(r5.h == 5);
  CHECK(r5.flags ==
        std::vector<std::string>{"stably_rational", "retract_rational"});

  Quiver a2 = Quiver::make({"v", "w"}, {{"a", "v", "w"}});
  CHECK_THROWS_AS(moduli_report(a2, DimVec({2, 1})), input_error);
}

TEST_CASE("reduction tower") {
  SECTION("splitting on the three-arrow kronecker quiver") {
    TowerNode t = reduction_tower(kronecker_quiver(3), DimVec({2, 2}));
    CHECK(t.kind == "split");
    CHECK(t.t == 3);
    REQUIRE(t.children.size() == 3);
    CHECK(t.children[0].kind == "real_root");
    CHECK(t.children[0].dim == DimVec({0, 1}));
    CHECK(t.children[1].kind == "real_root");
    CHECK(t.children[1].dim == DimVec({1, 0}));
    CHECK(t.children[2].kind == "kronecker");
    CHECK(t.children[2].dim == DimVec({2, 2}));
    CHECK(t.children[2].h == 2);
    CHECK(t.children[2].p == 2);
    CHECK(t.children[2].children.empty());
    CHECK(!t.children[2].flags.empty());
  }

  SECTION("real roots are leaves") {
    TowerNode t = reduction_tower(kronecker_quiver(3), DimVec({3, 8}));
    CHECK(t.kind == "real_root");
    CHECK(t.children.empty());
  }

  SECTION("one vertex with loops") {
    Quiver loop = Quiver::make({"x"}, {{"l", "x", "x"}});
    TowerNode t = reduction_tower(loop, DimVec(std::vector<Int>{1}));
    CHECK(t.kind == "loops");
    CHECK(t.h == 1);
    CHECK(t.p == 1);
    CHECK(t.children.empty());
    CHECK_THROWS_AS(reduction_tower(loop, DimVec(std::vector<Int>{2})),
                    input_error);
  }

  SECTION("cyclic support lifts through the double quiver") {
    Quiver tri = Quiver::make(
        {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
    TowerNode t =
        reduction_tower(tri, DimVec(std::vector<Int>{1, 1, 1}), 24);
    CHECK(t.kind == "double_lift");
    REQUIRE(t.children.size() == 1);
    CHECK(t.children[0].dim.total() == 6);
  }
}
