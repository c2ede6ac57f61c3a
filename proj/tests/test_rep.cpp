#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "quivermod/rep.hpp"

using namespace quivermod;

namespace {

const FpField F32;

Quiver a2() { return Quiver::make({"v", "w"}, {{"a", "v", "w"}}); }

Quiver triangle() {
  return Quiver::make({"1", "2", "3"},
                      {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
}

DimVec random_vec(const Quiver& q, std::mt19937_64& rng, Int hi) {
  DimVec d(q.num_vertices());
  for (int v = 0; v < q.num_vertices(); ++v) d[v] = Int(rng() % (hi + 1));
  return d;
}

bool same_matrices(const Rep<FpField>& r, const Rep<FpField>& s) {
  if (r.dims != s.dims) return false;
  for (std::size_t i = 0; i < r.mats.size(); ++i)
    if (!(r.mats[i] == s.mats[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("representation construction") {
  Quiver q3 = kronecker_quiver(3);
  Rep<FpField> z = zero_rep(F32, q3, DimVec({2, 3}));
  CHECK(z.mat(0).rows() == 3);
  CHECK(z.mat(0).cols() == 2);
  CHECK(z.mat(0).is_zero());

  Rep<FpField> s = simple_rep(F32, q3, 1);
  CHECK(s.dims == DimVec({0, 1}));

  std::mt19937_64 rng(7);
  Rep<FpField> r1 = random_rep(F32, q3, DimVec({2, 3}), rng);
  std::mt19937_64 rng2(7);
  Rep<FpField> r2 = random_rep(F32, q3, DimVec({2, 3}), rng2);
  CHECK(same_matrices(r1, r2));  // seeded sampling is reproducible

  CHECK_THROWS_AS(zero_rep(F32, q3, DimVec({-1, 2})), input_error);
}

TEST_CASE("morphisms compose and are recognized") {
  Quiver q = a2();
  std::mt19937_64 rng(3);
  Rep<FpField> r = random_rep(F32, q, DimVec({2, 2}), rng);
  RepMap<FpField> id = identity_map(r);
  CHECK(is_morphism(r, r, id));
  CHECK(is_morphism(r, r, compose(id, id)));
  RepMap<FpField> z = zero_map(r, r);
  CHECK(is_morphism(r, r, z));

  // A random vertex-wise map is essentially never a morphism.
  RepMap<FpField> junk = id;
  junk.vmats[0].at(0, 1) = F32.from_int(5);
  junk.vmats[1].at(1, 0) = F32.from_int(17);
  CHECK(!is_morphism(r, r, junk));
}

TEST_CASE("hom minus ext equals the euler form on random pairs") {
  std::vector<Quiver> corpus = {a2(), kronecker_quiver(2), kronecker_quiver(3),
                                triangle(),
                                Quiver::make({"x"}, {{"l", "x", "x"}})};
  std::mt19937_64 rng(19);
  for (const Quiver& q : corpus) {
    for (int trial = 0; trial < 10; ++trial) {
      DimVec a = random_vec(q, rng, 3);
      DimVec b = random_vec(q, rng, 3);
      Rep<FpField> r = random_rep(F32, q, a, rng);
      Rep<FpField> s = random_rep(F32, q, b, rng);
      HomExtDims hd = hom_ext_dims(r, s);
      CHECK(hd.hom >= 0);
      CHECK(hd.ext >= 0);
      CHECK(hd.hom - hd.ext == euler_form(q, a, b));
    }
  }
}

TEST_CASE("hom and ext between simples read off the arrows") {
  Quiver q = triangle();
  for (int v = 0; v < 3; ++v)
    for (int w = 0; w < 3; ++w) {
      Rep<FpField> sv = simple_rep(F32, q, v);
      Rep<FpField> sw = simple_rep(F32, q, w);
      Int arrows_vw = 0;
      for (const Arrow& a : q.arrows())
        if (a.src == v && a.tgt == w) ++arrows_vw;
      CHECK(hom_dim(sv, sw) == (v == w ? 1 : 0));
      CHECK(ext_dim(sv, sw) == arrows_vw);
    }
  Quiver qn = kronecker_quiver(4);
  CHECK(ext_dim(simple_rep(F32, qn, 0), simple_rep(F32, qn, 1)) == 4);
}

TEST_CASE("hom_space returns a basis of morphisms") {
  Quiver q = a2();
  std::mt19937_64 rng(11);
  Rep<FpField> r = random_rep(F32, q, DimVec({2, 1}), rng);
  auto basis = hom_space(r, r);
  CHECK(Int(basis.size()) == end_dim(r));
  for (const auto& f : basis) CHECK(is_morphism(r, r, f));
  std::vector<FpField::value_type> coeffs(basis.size());
  for (auto& c : coeffs) c = F32.sample(rng);
  CHECK(is_morphism(r, r, combine_maps(basis, coeffs)));
}

TEST_CASE("direct sums add hom dimensions") {
  Quiver q3 = kronecker_quiver(3);
  std::mt19937_64 rng(5);
  Rep<FpField> r = random_rep(F32, q3, DimVec({1, 2}), rng);
  Rep<FpField> s = random_rep(F32, q3, DimVec({2, 1}), rng);
  Rep<FpField> rs = direct_sum(r, s);
  CHECK(rs.dims == DimVec({3, 3}));
  CHECK(hom_dim(rs, rs) ==
        end_dim(r) + end_dim(s) + hom_dim(r, s) + hom_dim(s, r));
  Rep<FpField> r3 = rep_power(r, 3);
  CHECK(r3.dims == 3 * r.dims);
  CHECK(end_dim(r3) == 9 * end_dim(r));
}

TEST_CASE("kernel, cokernel, pushout") {
  Quiver q = a2();
  std::mt19937_64 rng(23);
  Rep<FpField> r = random_rep(F32, q, DimVec({2, 2}), rng);
  Rep<FpField> s = random_rep(F32, q, DimVec({1, 1}), rng);

  SECTION("kernel of a generic surjection r -> s") {
    auto basis = hom_space(r, s);
    REQUIRE(!basis.empty());
    std::vector<FpField::value_type> coeffs(basis.size());
    for (auto& c : coeffs) c = F32.sample(rng);
    RepMap<FpField> f = combine_maps(basis, coeffs);
    SubRep<FpField> k = kernel_rep(r, s, f);
    CHECK(is_morphism(k.rep, r, k.incl));
    // f composed with the inclusion vanishes.
    RepMap<FpField> z = compose(f, k.incl);
    for (const auto& m : z.vmats) CHECK(m.is_zero());
  }

  SECTION("cokernel of a generic injection s -> r") {
    auto basis = hom_space(s, r);
    REQUIRE(!basis.empty());
    std::vector<FpField::value_type> coeffs(basis.size());
    for (auto& c : coeffs) c = F32.sample(rng);
    RepMap<FpField> f = combine_maps(basis, coeffs);
    QuotRep<FpField> c = cokernel_rep(s, r, f);
    CHECK(is_morphism(r, c.rep, c.proj));
    RepMap<FpField> z = compose(c.proj, f);
    for (const auto& m : z.vmats) CHECK(m.is_zero());
  }

  SECTION("pushout legs commute") {
    Rep<FpField> b = random_rep(F32, q, DimVec({2, 2}), rng);
    Rep<FpField> c = random_rep(F32, q, DimVec({2, 2}), rng);
    auto fb = hom_space(s, b);
    auto fc = hom_space(s, c);
    REQUIRE(!fb.empty());
    REQUIRE(!fc.empty());
    PushoutRep<FpField> p = pushout_rep(s, b, c, fb[0], fc[0]);
    CHECK(is_morphism(b, p.rep, p.from_left));
    CHECK(is_morphism(c, p.rep, p.from_right));
    RepMap<FpField> left = compose(p.from_left, fb[0]);
    RepMap<FpField> right = compose(p.from_right, fc[0]);
    for (std::size_t v = 0; v < left.vmats.size(); ++v)
      CHECK(left.vmats[v] == right.vmats[v]);
    CHECK(p.rep.dims == b.dims + c.dims - s.dims);
  }
}

TEST_CASE("duality is an involution and transposes hom") {
  Quiver q = triangle();
  std::mt19937_64 rng(31);
  Rep<FpField> r = random_rep(F32, q, DimVec(std::vector<Int>{2, 1, 2}), rng);
  Rep<FpField> s = random_rep(F32, q, DimVec(std::vector<Int>{1, 2, 1}), rng);
  Rep<FpField> dr = dual_rep(r);
  Rep<FpField> ds = dual_rep(s);
  CHECK(hom_dim(dr, ds) == hom_dim(s, r));
  CHECK(ext_dim(dr, ds) == ext_dim(s, r));
  CHECK(same_matrices(dual_rep(dr), r));
}

TEST_CASE("double quiver transport round-trips") {
  Quiver q = triangle();
  DoubleQuiver dq = double_quiver(q);
  std::mt19937_64 rng(41);
  Rep<FpField> r = random_rep(F32, q, DimVec(std::vector<Int>{2, 2, 1}), rng);
  Rep<FpField> up = to_double(dq, r);
  CHECK(up.dims == lift_dimvec(dq, r.dims));
  Rep<FpField> down = from_double(dq, q, up);
  CHECK(same_matrices(down, r));

  // Hom dimensions transfer across the embedding.
  Rep<FpField> s = random_rep(F32, q, DimVec(std::vector<Int>{1, 2, 2}), rng);
  CHECK(hom_dim(to_double(dq, r), to_double(dq, s)) == hom_dim(r, s));

  // A non-invertible connector is rejected.
  up.mats[0].at(0, 0) = F32.zero();
  up.mats[0].at(0, 1) = F32.zero();
  CHECK_THROWS_AS(from_double(dq, q, up), genericity_error);
}

TEST_CASE("reflection functors") {
  Quiver q3 = kronecker_quiver(3);
  std::mt19937_64 rng(53);

  SECTION("sink reflection transforms dimensions and round-trips") {
    Rep<FpField> r = random_rep(F32, q3, DimVec({1, 2}), rng);
    Rep<FpField> refl = reflect_rep(r, 1, -1);  // kernel functor at the sink
    CHECK(refl.dims == reflect(q3, 1, r.dims));
    // Vertex 1 is a source of the reflected quiver.
    Rep<FpField> back = reflect_rep(refl, 1, +1);
    CHECK(back.dims == r.dims);
    CHECK(is_isomorphic(back, r, std::uint64_t{99}));
  }

  SECTION("source reflection") {
    Rep<FpField> r = random_rep(F32, q3, DimVec({2, 5}), rng);
    Rep<FpField> refl = reflect_rep(r, 0, +1);  // cokernel functor at the source
    CHECK(refl.dims == reflect(q3, 0, r.dims));
    Rep<FpField> back = reflect_rep(refl, 0, -1);
    CHECK(is_isomorphic(back, r, std::uint64_t{99}));
  }

  SECTION("a simple summand at the vertex blocks the functor") {
    CHECK_THROWS_AS(reflect_rep(simple_rep(F32, q3, 1), 1, -1),
                    genericity_error);
    CHECK_THROWS_AS(reflect_rep(simple_rep(F32, q3, 0), 0, +1),
                    genericity_error);
  }

  SECTION("role errors") {
    Rep<FpField> r = random_rep(F32, q3, DimVec({1, 2}), rng);
    CHECK_THROWS_AS(reflect_rep(r, 0, -1), input_error);  // 0 is not a sink
    CHECK_THROWS_AS(reflect_rep(r, 1, +1), input_error);  // 1 is not a source
    Quiver loop = Quiver::make({"x"}, {{"l", "x", "x"}});
    Rep<FpField> lr = random_rep(F32, loop, DimVec(std::vector<Int>{2}), rng);
    CHECK_THROWS_AS(reflect_rep(lr, 0, +1), input_error);
  }
}

TEST_CASE("kronecker sigma steps match the arithmetic") {
  Quiver q3 = kronecker_quiver(3);
  std::mt19937_64 rng(61);
  Rep<FpField> r = random_rep(F32, q3, DimVec({1, 2}), rng);

  Rep<FpField> plus = kronecker_sigma_plus_rep(r);
  auto [pa, pb] = kronecker::step_source(3, {1, 2});
  CHECK(plus.dims == DimVec({pa, pb}));

  Rep<FpField> minus = kronecker_sigma_minus_rep(r);
  auto [ma, mb] = kronecker::step_sink(3, {1, 2});
  CHECK(minus.dims == DimVec({ma, mb}));

  CHECK(is_isomorphic(kronecker_sigma_minus_rep(plus), r, std::uint64_t{1}));
  CHECK(is_isomorphic(kronecker_sigma_plus_rep(minus), r, std::uint64_t{1}));
}

TEST_CASE("real schur roots are realized with trivial endomorphisms") {
  Quiver q3 = kronecker_quiver(3);

  SECTION("simple at the sink: empty word") {
    Rep<FpField> r =
        build_real_schur_rep(F32, q3, DimVec({0, 1}), ReflectionWord{});
    CHECK(r.dims == DimVec({0, 1}));
  }

  SECTION("preprojectives via sink-step words") {
    for (int l = 1; l <= 3; ++l) {
      ReflectionWord w;
      for (int i = 0; i < l; ++i) w.steps.push_back(ReflectionStep{1, -1});
      DimVec target = kronecker::preprojective_dim(3, l);
      Rep<FpField> r = build_real_schur_rep(F32, q3, target, w);
      CHECK(r.dims == target);
      CHECK(end_dim(r) == 1);
      CHECK(ext_dim(r, r) == 0);
    }
  }

  SECTION("preinjectives via source-step words") {
    ReflectionWord w;
    w.steps.push_back(ReflectionStep{0, +1});
    w.steps.push_back(ReflectionStep{0, +1});
    DimVec target = kronecker::preinjective_dim(3, 2);  // (8,3)
    Rep<FpField> r = build_real_schur_rep(F32, q3, target, w);
    CHECK(r.dims == target);
    CHECK(end_dim(r) == 1);
  }

  SECTION("words that do not reduce are rejected") {
    ReflectionWord w;
    w.steps.push_back(ReflectionStep{1, -1});
    CHECK_THROWS_AS(build_real_schur_rep(F32, q3, DimVec({3, 8}), w),
                    input_error);
    CHECK_THROWS_AS(build_real_schur_rep(F32, q3, DimVec({0, 2}),
                                         ReflectionWord{}),
                    input_error);
  }
}

TEST_CASE("isomorphism testing") {
  Quiver q3 = kronecker_quiver(3);
  std::mt19937_64 rng(71);

  SECTION("rigid representations of equal dimension are isomorphic") {
    // (1,3) is a real root, so two generic samples are isomorphic.
    Rep<FpField> a = random_rep(F32, q3, DimVec({1, 3}), rng);
    Rep<FpField> b = random_rep(F32, q3, DimVec({1, 3}), rng);
    CHECK(is_isomorphic(a, b, std::uint64_t{5}));
  }

  SECTION("direct sum order does not matter") {
    Rep<FpField> a = random_rep(F32, q3, DimVec({1, 2}), rng);
    Rep<FpField> b = random_rep(F32, q3, DimVec({2, 3}), rng);
    CHECK(is_isomorphic(direct_sum(a, b), direct_sum(b, a), std::uint64_t{5}));
  }

  SECTION("different dimensions are never isomorphic") {
    Rep<FpField> a = random_rep(F32, q3, DimVec({1, 2}), rng);
    Rep<FpField> b = random_rep(F32, q3, DimVec({2, 3}), rng);
    CHECK(!is_isomorphic(a, b, std::uint64_t{5}));
  }

  SECTION("zero matrices against generic matrices") {
    Rep<FpField> z = zero_rep(F32, q3, DimVec({1, 1}));
    Rep<FpField> g = random_rep(F32, q3, DimVec({1, 1}), rng);
    CHECK(!is_isomorphic(z, g, std::uint64_t{5}));
  }
}
