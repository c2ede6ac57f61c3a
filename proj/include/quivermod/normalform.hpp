#pragma once

// Matrix normal form for quiver moduli.  For an indivisible root (a,b) of the
// n-arrow Kronecker quiver lying in the fundamental region, a tilting pair of
// representations (S, T) turns every sufficiently general representation of
// dimension h(a,b) into a representation of the (1+p)-arrow Kronecker quiver
// of dimension (h,h), and from there into p matrices of size h x h considered
// up to simultaneous conjugacy.  This header builds the pair, implements the
// reduction and its inverse, reports what is known about rationality of the
// corresponding moduli problems, and assembles the recursive reduction tree
// for arbitrary Schur roots.

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "candecomp.hpp"
#include "errors.hpp"
#include "homext.hpp"
#include "kronecker.hpp"
#include "matrix.hpp"
#include "quiver.hpp"
#include "rep.hpp"

namespace quivermod {

// ---------------------------------------------------------------------------
// The perpendicular dimension pair.
//
// For indivisible (a,b) in the fundamental region with a <= b there is a
// unique (c,d) with <(c,d),(a,b)> = 1 (that is, db - c(nb-a) = 1) and
// a < c <= a+b.  A general representation of dimension (c,d) then admits a
// unique map onto a general representation of dimension (a,b).

inline std::pair<Int, Int> perp_pair(int n, Int a, Int b) {
  if (n < 1) throw input_error("perp_pair needs at least one arrow");
  if (a < 0 || b <= 0 || a > b)
    throw input_error("perp_pair needs 0 <= a <= b with b positive");
  if (std::gcd(a, b) != 1)
    throw input_error("perp_pair needs an indivisible vector, got gcd " +
                      std::to_string(std::gcd(a, b)));
  if (2 * b > Int(n) * a)
    throw input_error("(" + std::to_string(a) + "," + std::to_string(b) +
                      ") is outside the fundamental region of the " +
                      std::to_string(n) + "-arrow Kronecker quiver");
  std::pair<Int, Int> found{0, 0};
  int hits = 0;
  for (Int c = a + 1; c <= a + b; ++c) {
    Int num = 1 + c * (Int(n) * b - a);
    if (num % b != 0) continue;
    found = {c, num / b};
    ++hits;
  }
  check_internal(hits == 1, "perpendicular pair not unique in its window");
  return found;
}

// ---------------------------------------------------------------------------
// The tilting pair.

template <class F>
struct TiltingPair {
  int n = 0;       // arrow count of the base Kronecker quiver
  DimVec ab;       // the fundamental-region root
  DimVec cd;       // its perpendicular pair
  Rep<F> S;        // general representation of dimension (c,d)
  Rep<F> T;        // the pushout representation, dim T = p*(c,d) + (a,b)
  Int p = 0;       // 1 - <(a,b),(a,b)>
  std::vector<RepMap<F>> homST_basis;  // basis of Hom(S,T), size 1+p
};

namespace detail {

// Column vector listing the entries of a morphism, vertex by vertex and
// row-major within each vertex matrix — the same order hom_space uses, so
// flattening its basis elements reproduces the kernel columns exactly.
template <class F>
Matrix<F> flatten_map(const F& field, const RepMap<F>& f) {
  Int total = 0;
  for (const auto& m : f.vmats) total += Int(m.rows()) * m.cols();
  Matrix<F> out(field, static_cast<int>(total), 1);
  int pos = 0;
  for (const auto& m : f.vmats)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) out.at(pos++, 0) = m.at(i, j);
  return out;
}

template <class F>
Matrix<F> basis_matrix(const F& field, const std::vector<RepMap<F>>& basis) {
  if (basis.empty()) throw input_error("empty morphism basis");
  Matrix<F> out = flatten_map(field, basis[0]);
  for (size_t i = 1; i < basis.size(); ++i)
    out = out.hstack(flatten_map(field, basis[i]));
  return out;
}

template <class F>
bool surjective_everywhere(const Rep<F>& target, const RepMap<F>& f) {
  for (int v = 0; v < target.quiver.num_vertices(); ++v)
    if (f.vmats[static_cast<size_t>(v)].rank() != target.dims[v]) return false;
  return true;
}

}  // namespace detail

// Sample a general (S, R) for the root, extract K = ker(S -> R), pick a
// p-dimensional space W of maps K -> S that hits a basis of Ext(R,R), and
// form T as the pushout of S <- K -> S^p.  Every genericity assertion is
// retried with fresh samples up to `retries` times.
//
// The composite surjection Hom(K,S) -> Ext(R,R) used to choose W factors as
// postcomposition with the map S -> R followed by the connecting map of
// 0 -> K -> S -> R -> 0; since Hom(S,R) is spanned by that very map, whose
// restriction to K is zero, the connecting map identifies Ext(R,R) with all
// of Hom(K,R).  So W is found by row-reducing the postcomposition matrix
// Hom(K,S) -> Hom(K,R) and keeping the basis elements at its pivot columns.
template <class F>
TiltingPair<F> build_tilting_pair(const F& field, int n, const DimVec& ab,
                                  std::uint64_t seed, int retries = 5) {
  if (ab.size() != 2) throw input_error("build_tilting_pair needs a length-2 vector");
  auto [c, d] = perp_pair(n, ab[0], ab[1]);
  const Quiver q = kronecker_quiver(n);
  const DimVec cd(std::vector<Int>{c, d});
  const Int p = 1 - euler_form(q, ab, ab);
  check_internal(p >= 1, "fundamental-region root with no parameters");

  std::mt19937_64 rng(seed);
  std::string last_failure = "never attempted";
  for (int attempt = 0; attempt < retries; ++attempt) {
    try {
      Rep<F> s = random_rep(field, q, cd, rng);
      Rep<F> r = random_rep(field, q, ab, rng);

      HomExtDims sr = hom_ext_dims(s, r);
      if (sr.hom != 1 || sr.ext != 0)
        throw genericity_error("hom(S,R) = " + std::to_string(sr.hom) +
                               ", ext(S,R) = " + std::to_string(sr.ext) +
                               " (want 1 and 0)");
      RepMap<F> phi = hom_space(s, r)[0];
      if (!detail::surjective_everywhere(r, phi))
        throw genericity_error("the map S -> R is not surjective");

      SubRep<F> k = kernel_rep(s, r, phi);
      check_internal(k.rep.dims == cd - ab, "kernel dimensions are off");
      {
        auto cls = kronecker::classify(n, k.rep.dims[0], k.rep.dims[1]);
        check_internal(cls.tag == kronecker::KClassTag::preprojective,
                       "kernel of the tilting map is not preprojective");
      }
      if (ext_dim(k.rep, k.rep) != 0)
        throw genericity_error("the kernel K is not rigid");

      HomExtDims rr = hom_ext_dims(r, r);
      if (rr.hom != 1 || rr.ext != p)
        throw genericity_error("R is not general: end = " + std::to_string(rr.hom) +
                               ", ext(R,R) = " + std::to_string(rr.ext));

      std::vector<RepMap<F>> bks = hom_space(k.rep, s);
      std::vector<RepMap<F>> bkr = hom_space(k.rep, r);
      if (static_cast<Int>(bkr.size()) != p)
        throw genericity_error("hom(K,R) = " + std::to_string(bkr.size()) +
                               " instead of " + std::to_string(p));
      if (static_cast<Int>(bks.size()) < p)
        throw genericity_error("hom(K,S) too small to contain W");

      // Postcomposition matrix in the chosen bases, then its pivot columns.
      Matrix<F> kb = detail::basis_matrix(field, bkr);
      Matrix<F> comp(field, static_cast<int>(p), 0);
      for (const RepMap<F>& psi : bks)
        comp = comp.hstack(kb.solve_unique(
            detail::flatten_map(field, compose(phi, psi))));
      Matrix<F> red = comp;
      std::vector<int> pivots = red.rref();
      if (static_cast<Int>(pivots.size()) != p)
        throw genericity_error("Hom(K,S) does not surject onto Ext(R,R)");

      // The map K -> S^p with the chosen W-components, then the pushout.
      Rep<F> sp = rep_power(s, p);
      RepMap<F> w;
      for (int v = 0; v < q.num_vertices(); ++v) {
        Matrix<F> col(field, 0, static_cast<int>(k.rep.dims[v]));
        for (int j : pivots)
          col = col.vstack(bks[static_cast<size_t>(j)].vmats[static_cast<size_t>(v)]);
        w.vmats.push_back(std::move(col));
      }
      PushoutRep<F> po = pushout_rep(k.rep, s, sp, k.incl, w);
      Rep<F> t = std::move(po.rep);
      check_internal(t.dims == p * cd + ab, "pushout dimensions are off");

      std::vector<RepMap<F>> hst = hom_space(s, t);
      if (static_cast<Int>(hst.size()) != 1 + p)
        throw genericity_error("hom(S,T) = " + std::to_string(hst.size()) +
                               " instead of " + std::to_string(1 + p));
      HomExtDims tr = hom_ext_dims(t, r);
      if (tr.hom != 1 || tr.ext != 0)
        throw genericity_error("hom(T,R) = " + std::to_string(tr.hom) +
                               ", ext(T,R) = " + std::to_string(tr.ext) +
                               " (want 1 and 0)");
      if (!detail::surjective_everywhere(r, hom_space(t, r)[0]))
        throw genericity_error("the map T -> R is not surjective");

      return TiltingPair<F>{n, ab, cd, std::move(s), std::move(t), p,
                            std::move(hst)};
    } catch (const genericity_error& e) {
      last_failure = e.what();
    }
  }
  throw genericity_error("tilting pair construction failed " +
                         std::to_string(retries) + " times; last failure: " +
                         last_failure);
}

// ---------------------------------------------------------------------------
// Reduction to the (1+p)-arrow Kronecker quiver and back.

// Hom(T,R') and Hom(S,R') as the two vertex spaces, precomposition with each
// basis element of Hom(S,T) as the arrow matrices.  R' must be general enough
// that both hom spaces have dimension h and both ext spaces vanish.
template <class F>
Rep<F> reduce_to_kronecker(const TiltingPair<F>& tp, const Rep<F>& rp) {
  if (rp.quiver.signature() != tp.S.quiver.signature())
    throw input_error("reduce_to_kronecker: representation is not on the base quiver");
  Int h = tp.ab[0] > 0 ? rp.dims[0] / tp.ab[0] : rp.dims[1] / tp.ab[1];
  if (h < 1 || !(rp.dims == h * tp.ab))
    throw input_error("reduce_to_kronecker: dimension " + rp.dims.str() +
                      " is not a multiple of " + tp.ab.str());

  HomExtDims hs = hom_ext_dims(tp.S, rp);
  HomExtDims ht = hom_ext_dims(tp.T, rp);
  if (hs.hom != h || hs.ext != 0 || ht.hom != h || ht.ext != 0)
    throw genericity_error(
        "reduce_to_kronecker: input is not general (hom/ext against S: " +
        std::to_string(hs.hom) + "/" + std::to_string(hs.ext) + ", against T: " +
        std::to_string(ht.hom) + "/" + std::to_string(ht.ext) +
        "); resample with another seed");

  std::vector<RepMap<F>> bt = hom_space(tp.T, rp);
  std::vector<RepMap<F>> bs = hom_space(tp.S, rp);
  Matrix<F> sb = detail::basis_matrix(rp.field, bs);

  Rep<F> out = zero_rep(rp.field, kronecker_quiver(static_cast<int>(1 + tp.p)),
                        DimVec(std::vector<Int>{h, h}));
  for (Int i = 0; i <= tp.p; ++i) {
    Matrix<F> m(rp.field, static_cast<int>(h), 0);
    for (Int j = 0; j < h; ++j)
      m = m.hstack(sb.solve_unique(detail::flatten_map(
          rp.field, compose(bt[static_cast<size_t>(j)],
                            tp.homST_basis[static_cast<size_t>(i)]))));
    out.mats[static_cast<size_t>(i)] = std::move(m);
  }
  return out;
}

// Rebuild a representation of dimension h(a,b) from its Kronecker shadow.
// With W the kernel of the stacked matrix [M(a0) | ... | M(ap)], the result
// is the cokernel of the natural map W (x) S -> k^h (x) T whose blocks
// combine the Hom(S,T) basis with the kernel coordinates.
template <class F>
Rep<F> inverse_from_kronecker(const TiltingPair<F>& tp, const Rep<F>& m) {
  detail::check_kronecker_shape(m.quiver);
  if (m.quiver.num_arrows() != 1 + tp.p)
    throw input_error("inverse_from_kronecker: expected " +
                      std::to_string(1 + tp.p) + " arrows, got " +
                      std::to_string(m.quiver.num_arrows()));
  if (m.dims[0] != m.dims[1] || m.dims[0] < 1)
    throw input_error("inverse_from_kronecker: dimension must be (h,h), got " +
                      m.dims.str());
  const Int h = m.dims[0];

  Matrix<F> stacked = m.mats[0];
  for (size_t i = 1; i < m.mats.size(); ++i) stacked = stacked.hstack(m.mats[i]);
  Matrix<F> w = stacked.kernel_basis();
  if (w.cols() != h * tp.p)
    throw genericity_error("inverse_from_kronecker: stacked arrow matrix is not "
                           "surjective; input is not general");

  Rep<F> shp = rep_power(tp.S, h * tp.p);
  Rep<F> th = rep_power(tp.T, h);
  const Quiver& q = tp.S.quiver;
  RepMap<F> f;
  for (int v = 0; v < q.num_vertices(); ++v) {
    const Int sv = tp.S.dims[v], tv = tp.T.dims[v];
    Matrix<F> block(m.field, static_cast<int>(h * tv),
                    static_cast<int>(h * tp.p * sv));
    for (Int j = 0; j < h * tp.p; ++j)
      for (Int r = 0; r < h; ++r) {
        // Coefficient of Hom-basis element i on (row block r, column block j).
        for (Int i = 0; i <= tp.p; ++i) {
          const auto coeff = w.at(static_cast<int>(i * h + r), static_cast<int>(j));
          if (m.field.is_zero(coeff)) continue;
          const Matrix<F>& fi =
              tp.homST_basis[static_cast<size_t>(i)].vmats[static_cast<size_t>(v)];
          for (Int rr = 0; rr < tv; ++rr)
            for (Int cc = 0; cc < sv; ++cc) {
              auto& cell = block.at(static_cast<int>(r * tv + rr),
                                    static_cast<int>(j * sv + cc));
              cell = m.field.add(cell, m.field.mul(coeff, fi.at(static_cast<int>(rr),
                                                                static_cast<int>(cc))));
            }
        }
      }
    f.vmats.push_back(std::move(block));
  }
  for (int v = 0; v < q.num_vertices(); ++v)
    if (f.vmats[static_cast<size_t>(v)].rank() != shp.dims[v])
      throw genericity_error("inverse_from_kronecker: the glueing map fails to be "
                             "injective at '" + q.vertex_name(v) +
                             "'; input is not general");

  QuotRep<F> out = cokernel_rep(shp, th, f);
  check_internal(out.rep.dims == h * tp.ab,
                 "inverse_from_kronecker: cokernel dimensions are off");
  return out.rep;
}

// The p matrices M(a0)^{-1} M(ai), i = 1..p.  Simultaneous conjugacy of the
// tuple is the isomorphism invariant of M.
template <class F>
std::vector<Matrix<F>> matrices_normal_form(const Rep<F>& m) {
  detail::check_kronecker_shape(m.quiver);
  if (m.quiver.num_arrows() < 1)
    throw input_error("matrices_normal_form needs at least one arrow");
  if (m.dims[0] != m.dims[1])
    throw input_error("matrices_normal_form: dimension must be (h,h), got " +
                      m.dims.str());
  if (!m.mats[0].is_invertible())
    throw genericity_error("matrices_normal_form: the first arrow matrix is "
                           "singular; permute arrows or resample");
  Matrix<F> inv = m.mats[0].inverse();
  std::vector<Matrix<F>> out;
  for (size_t i = 1; i < m.mats.size(); ++i) out.push_back(inv.mul(m.mats[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Rationality verdicts.

struct ModuliReport {
  Int h = 1;
  Int p = 0;
  std::string model;
  std::vector<std::string> flags;
};

inline bool divides_420(Int h) { return h >= 1 && 420 % h == 0; }

inline bool is_square_free(Int h) {
  for (Int d = 2; d * d <= h; ++d)
    if (h % (d * d) == 0) return false;
  return h >= 1;
}

// What is known about the rationality of "p matrices of size h x h up to
// simultaneous conjugacy": rational for h <= 4; stably rational whenever h
// divides 420; retract rational for square-free h; otherwise open.
inline std::vector<std::string> rationality_flags(Int h) {
  if (h <= 4) return {"rational", "stably_rational", "retract_rational"};
  std::vector<std::string> flags;
  if (divides_420(h)) flags.push_back("stably_rational");
  if (is_square_free(h)) flags.push_back("retract_rational");
  if (flags.empty()) flags.push_back("unknown");
  return flags;
}

namespace detail {

inline DimVec divide_exact(const DimVec& a, Int h) {
  DimVec out = a;
  for (int v = 0; v < out.size(); ++v) {
    check_internal(out[v] % h == 0, "vector not divisible by its own gcd");
    out[v] /= h;
  }
  return out;
}

}  // namespace detail

inline ModuliReport moduli_report(const Quiver& q, const DimVec& alpha,
                                  Int max_total = 24) {
  DecompEngine engine(q, max_total);
  if (!engine.is_schur(alpha))
    throw input_error("moduli_report needs a Schur root; " + alpha.str() +
                      " is not one");
  ModuliReport rep;
  rep.h = greatest_divisor(alpha);
  DimVec base = detail::divide_exact(alpha, rep.h);
  rep.p = 1 - euler_form(q, base, base);
  rep.model = std::to_string(rep.p) + " matrices of size " + std::to_string(rep.h) +
              "x" + std::to_string(rep.h) + " up to simultaneous conjugacy";
  rep.flags = rationality_flags(rep.h);
  return rep;
}

// ---------------------------------------------------------------------------
// The reduction tree.
//
// Every Schur root reduces to matrix normal form: real roots and two-vertex
// problems are terminal, a cyclic quiver is replaced by its separated double,
// and everything else splits into a uniform sub, a uniform quotient, and a
// two-vertex problem whose loops carry the parameters of the two constituent
// roots.  The tree records those steps; two-vertex quivers with loops are
// reported as terminal (their further reduction by reflections is classical
// bookkeeping that adds no representation-level content here).

struct TowerNode {
  std::string kind;    // real_root | kronecker | two_vertex | loops |
                       // schur_root | double_lift | split
  std::string quiver;  // printable signature of the node's quiver
  DimVec dim;
  Int h = 1;
  Int p = 0;
  Int t = -1;  // ext between quotient and sub roots; only set on split nodes
  std::vector<std::string> flags;  // rationality verdicts, leaves only
  std::vector<TowerNode> children;
};

namespace detail {

inline void annotate_moduli(TowerNode& node, const Quiver& q, const DimVec& alpha,
                            bool leaf) {
  node.h = greatest_divisor(alpha);
  DimVec base = divide_exact(alpha, node.h);
  node.p = 1 - euler_form(q, base, base);
  if (leaf) node.flags = rationality_flags(node.h);
}

// Leaf for a constituent root produced by a split.  Not recursed: its moduli
// parameters reappear as loops of the sibling two-vertex problem.
inline TowerNode root_leaf(const Quiver& q, const DimVec& root) {
  TowerNode node;
  node.quiver = q.signature();
  node.dim = root;
  node.kind = euler_form(q, root, root) == 1 ? "real_root" : "schur_root";
  annotate_moduli(node, q, root, true);
  return node;
}

// `terminal` marks the two-vertex problem manufactured by a split: it is the
// end product of the reduction and is never split again (that would loop —
// its own split reproduces the same problem).
inline TowerNode tower_node(const Quiver& q, const DimVec& alpha, Int max_total,
                            bool terminal) {
  TowerNode node;
  node.quiver = q.signature();
  node.dim = alpha;
  annotate_moduli(node, q, alpha, true);

  if (euler_form(q, alpha, alpha) == 1) {
    node.kind = "real_root";
    return node;
  }

  Subquiver sup = support(q, alpha);
  if (sup.quiver.num_vertices() == 1) {
    // All the content already is matrices under conjugacy.
    node.kind = "loops";
    return node;
  }

  if (q.num_vertices() == 2) {
    bool has_loop = false, fwd = false, bwd = false;
    for (const Arrow& a : q.arrows()) {
      if (a.src == a.tgt) has_loop = true;
      else if (a.src == 0) fwd = true;
      else bwd = true;
    }
    if (!(fwd && bwd) && (has_loop || terminal)) {
      node.kind = has_loop ? "two_vertex" : "kronecker";
      return node;
    }
    // Both directions: cyclic treatment below.  Loop-free non-terminal:
    // still worth one split, whose terminal child carries the verdict.
  }

  if (!is_acyclic(sup.quiver)) {
    node.flags.clear();
    node.kind = "double_lift";
    DoubleQuiver dq = double_quiver(q);
    node.children.push_back(
        tower_node(dq.quiver, lift_dimvec(dq, alpha), max_total, false));
    return node;
  }

  node.flags.clear();
  node.kind = "split";
  DecompEngine engine(q, max_total);
  RigidSplit split = engine.rigid_split(alpha);
  const DimVec& beta = split.quotient.root;   // quotient = m copies of beta
  const DimVec& gamma = split.sub.root;       // sub = n copies of gamma
  const Int m = split.quotient.mult, n = split.sub.mult;
  check_internal(m * beta + n * gamma == alpha, "split does not sum back");
  node.t = engine.homext().generic_ext(beta, gamma);

  node.children.push_back(root_leaf(q, gamma));
  node.children.push_back(root_leaf(q, beta));
  Quiver aux = two_vertex_quiver(static_cast<int>(1 - euler_form(q, beta, beta)),
                                 static_cast<int>(node.t),
                                 static_cast<int>(1 - euler_form(q, gamma, gamma)));
  node.children.push_back(
      tower_node(aux, DimVec(std::vector<Int>{m, n}), max_total, true));
  return node;
}

}  // namespace detail

inline TowerNode reduction_tower(const Quiver& q, const DimVec& alpha,
                                 Int max_total = 24) {
  DecompEngine engine(q, max_total);
  if (!engine.is_schur(alpha))
    throw input_error("reduction_tower needs a Schur root; " + alpha.str() +
                      " is not one");
  return detail::tower_node(q, alpha, max_total, false);
}

}  // namespace quivermod
