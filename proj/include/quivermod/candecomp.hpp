#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "homext.hpp"
#include "kronecker.hpp"
#include "quiver.hpp"

namespace quivermod {

// A uniform vector: mult general representations of one Schur root.  For a
// non-isotropic root the multiplicity is folded into the root, so mult == 1.
struct UniformVec {
  DimVec vec;
  DimVec root;
  Int mult = 1;
  RootClass cls = RootClass::real;

  static UniformVec from_block(const Block& b) {
    return UniformVec{b.vec(), b.root, b.mult, b.cls};
  }
  Block to_block() const { return Block{root, mult, cls}; }
};

struct RigidSplit {
  UniformVec quotient;  // m copies of a root, the generic quotient side
  UniformVec sub;       // n copies of a root, the generic (rigid) sub side
};

// Canonical decomposition without searching over splittings.
//
// The driver maintains a uniform rigid sub-vector eps of alpha, seeded with
// the full fiber over the first sink of the support.  Each turn decomposes
// the complement rho = alpha - eps recursively.  If rho is itself uniform the
// problem collapses to a two-uniform analysis solved in closed form through
// the generalized Kronecker classification (with a small oracle call for one
// tame side case).  Otherwise a uniform rigid summand gamma of rho either
// peels off as a canonical summand of alpha, or eps absorbs it and grows to a
// rigid sub-vector with a strictly larger root; the root is bounded by alpha,
// so the loop terminates.
//
// Quivers whose support carries an oriented cycle are handled by lifting to
// the bipartite double, decomposing there, and pulling the summands back.
class DecompEngine {
 public:
  explicit DecompEngine(Quiver q, Int max_total = 24)
      : q_(std::move(q)), homext_(q_, max_total) {}

  const Quiver& quiver() const { return q_; }
  const HomExtEngine& homext() const { return homext_; }
  Int max_total() const { return homext_.max_total(); }
  Int assertions_checked() const {
    std::lock_guard<std::mutex> lk(mu_);
    return assertions_;
  }

  CanDecomp canonical_decomposition(const DimVec& alpha) {
    check_nonneg(q_, alpha);
    if (alpha.is_zero()) return CanDecomp{};
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(alpha);
      if (it != memo_.end()) return it->second;
    }
    CanDecomp d = decompose_uncached(alpha);
    // Cheap shape checks on every result.
    check_internal(d.sum(q_.num_vertices()) == alpha,
                   "decomposition does not sum to its input");
    for (const Block& b : d.blocks) {
      check_internal(b.mult >= 1, "non-positive multiplicity");
      check_internal(b.cls != RootClass::non_isotropic || b.mult == 1,
                     "non-isotropic block with folded multiplicity");
      check_internal(b.cls == classify_root(q_, b.root), "block class mismatch");
    }
    count_assertions(2 + Int(d.blocks.size()));
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(alpha, d);
    return d;
  }

  bool is_schur(const DimVec& alpha) {
    check_nonneg(q_, alpha);
    if (alpha.is_zero()) return false;
    CanDecomp d = canonical_decomposition(alpha);
    return d.single() && d.blocks[0].mult == 1 && d.blocks[0].root == alpha;
  }

  // First summand (in the canonical block order) all of whose generic homs to
  // the other summands vanish.  Input must be a canonical decomposition; the
  // underlying ordering argument guarantees such a summand exists.
  UniformVec uniform_rigid_summand(const CanDecomp& d) const {
    if (d.empty()) throw input_error("uniform_rigid_summand of an empty decomposition");
    for (std::size_t j = 0; j < d.blocks.size(); ++j) {
      bool ok = true;
      for (std::size_t i = 0; i < d.blocks.size() && ok; ++i) {
        if (i == j) continue;
        if (homext_.generic_hom(d.blocks[j].root, d.blocks[i].root) != 0)
          ok = false;
      }
      if (ok) return UniformVec::from_block(d.blocks[j]);
    }
    throw internal_error("no uniform rigid summand found");
  }

  // Split a Schur vector as rigid sub + uniform quotient (the state of the
  // decomposition loop at its terminal turn).  The greatest divisors of the
  // two sides are coprime up to the greatest divisor of alpha.
  RigidSplit rigid_split(const DimVec& alpha) {
    check_nonneg(q_, alpha);
    if (!is_schur(alpha))
      throw input_error("rigid_split needs a Schur root, got " + alpha.str());
    Subquiver sup = support(q_, alpha);
    if (!is_acyclic(sup.quiver))
      throw input_error("rigid_split needs an acyclic support; lift through "
                        "the double first");
    if (sup.quiver.num_vertices() == 1)
      throw input_error("rigid_split is trivial on a one-vertex support");
    auto out = run_loop(alpha, /*stop_at_terminal=*/true);
    auto* term = std::get_if<Terminal>(&out);
    check_internal(term != nullptr, "Schur vector left the loop without a split");
    RigidSplit rs{UniformVec::from_block(term->quotient), term->sub};
    Int g = std::gcd(greatest_divisor(rs.sub.vec), greatest_divisor(rs.quotient.vec));
    check_internal(g == greatest_divisor(alpha),
                   "split sides do not realize the greatest divisor");
    check_internal(homext_.generic_hom(rs.sub.vec, rs.quotient.vec) == 0 &&
                       homext_.generic_ext(rs.sub.vec, rs.quotient.vec) == 0,
                   "split sub side is not rigid");
    count_assertions(3);
    return rs;
  }

 private:
  struct Terminal {
    UniformVec sub;
    Block quotient;
  };
  using LoopOutcome = std::variant<CanDecomp, Terminal>;

  CanDecomp decompose_uncached(const DimVec& alpha) {
    Subquiver sup = support(q_, alpha);
    if (!is_acyclic(sup.quiver)) return decompose_via_double(alpha);
    auto comps = connected_components(sup.quiver);
    if (comps.size() > 1) {
      CanDecomp out;
      for (const auto& comp : comps) {
        DimVec part(q_.num_vertices());
        for (int sv : comp) part[sup.vertex_map[sv]] = alpha[sup.vertex_map[sv]];
        out = merge_decomps(out, canonical_decomposition(part));
      }
      return out;
    }
    auto outcome = run_loop(alpha, /*stop_at_terminal=*/false);
    return std::get<CanDecomp>(std::move(outcome));
  }

  CanDecomp decompose_via_double(const DimVec& alpha) {
    ensure_double();
    DimVec lifted = lift_dimvec(dq_, alpha);
    CanDecomp up = double_engine_->canonical_decomposition(lifted);
    CanDecomp down;
    for (const Block& b : up.blocks) {
      DimVec root = lower_dimvec(dq_, b.root);  // summands of a lifted vector lift
      RootClass cls = classify_root(q_, root);
      check_internal(cls == b.cls, "double lift changed a root class");
      down.blocks.push_back(Block{root, b.mult, cls});
    }
    count_assertions(Int(up.blocks.size()));
    down.sort_canonical();
    return down;
  }

  // First sink of the support: no arrow leads from it to another supported
  // vertex.  Exists because the support is acyclic.
  int first_support_sink(const DimVec& alpha) const {
    for (int v = 0; v < q_.num_vertices(); ++v) {
      if (alpha[v] == 0) continue;
      bool sink = true;
      for (const Arrow& a : q_.arrows())
        if (a.src == v && alpha[a.tgt] != 0) {
          sink = false;
          break;
        }
      if (sink) return v;
    }
    throw internal_error("acyclic support without a sink");
  }

  LoopOutcome run_loop(const DimVec& alpha, bool stop_at_terminal) {
    const int n = q_.num_vertices();
    int v = first_support_sink(alpha);
    UniformVec eps{alpha[v] * DimVec::unit(n, v), DimVec::unit(n, v), alpha[v],
                   RootClass::real};
    const Int g_alpha = greatest_divisor(alpha);
    DimVec prev_root;
    for (Int iter = 0; iter <= alpha.total() + 1; ++iter) {
      // eps stays a rigid sub-vector whose root grows strictly; both facts
      // are theorems about the update rule, so check them as we go.
      check_internal(eps.vec.leq(alpha), "sub-vector escaped its bound");
      check_internal(greatest_divisor(eps.vec) % g_alpha == 0,
                     "rigid sub-vector lost the divisor invariant");
      check_internal(homext_.generic_hom(eps.vec, alpha - eps.vec) == 0,
                     "sub side maps nontrivially to its complement");
      check_internal(homext_.generic_ext(eps.vec, alpha - eps.vec) == 0,
                     "sub side extends its complement");
      if (iter > 0) {
        check_internal(prev_root.leq(eps.root) && prev_root != eps.root,
                       "rigid sub-vector root failed to grow");
      }
      count_assertions(5);
      prev_root = eps.root;

      DimVec rho = alpha - eps.vec;
      if (rho.is_zero()) {
        if (stop_at_terminal)
          throw input_error("rigid_split is trivial: the vector is uniform");
        CanDecomp d;
        d.blocks.push_back(eps.to_block());
        return d;
      }
      CanDecomp drho = canonical_decomposition(rho);
      if (drho.single()) {
        if (stop_at_terminal) return Terminal{eps, drho.blocks[0]};
        return two_uniform_analysis(alpha, eps, drho.blocks[0]);
      }
      UniformVec gamma = uniform_rigid_summand(drho);
      const DimVec& sigma = gamma.root;
      if (homext_.generic_ext(sigma, alpha - sigma) == 0 &&
          homext_.generic_ext(alpha - sigma, sigma) == 0) {
        // sigma is a canonical summand of alpha: peel it and recurse.
        count_assertions(2);
        CanDecomp rest = canonical_decomposition(alpha - sigma);
        CanDecomp peeled;
        peeled.blocks.push_back(Block{sigma, 1, gamma.cls});
        return merge_decomps(rest, peeled);
      }
      // Absorb gamma: any uniform rigid summand of eps + gamma is a rigid
      // sub-vector of alpha with a strictly larger root.
      CanDecomp comb = canonical_decomposition(eps.vec + gamma.vec);
      eps = uniform_rigid_summand(comb);
    }
    throw internal_error("decomposition loop failed to terminate");
  }

  // rho = alpha - eps.vec turned out uniform: closed-form resolution.
  CanDecomp two_uniform_analysis(const DimVec& alpha, UniformVec sub,
                                 const Block& quot_block) {
    UniformVec quot = UniformVec::from_block(quot_block);
    check_internal(sub.root != quot.root, "two-uniform sides share a root");
    // Extensions of the quotient root by the sub root survive every
    // reorientation below, so fix the count first.
    Int t = homext_.generic_ext(quot.root, sub.root);
    if (sub.cls != RootClass::real && quot.cls == RootClass::real) {
      // Reversing all arrows exchanges subs and quotients and keeps both t
      // and the decomposition; after the exchange the sub root is real.
      std::swap(sub, quot);
    }
    CanDecomp out;
    auto substitute = [&](const CanDecomp& aux) {
      // Roots (x, y) of the auxiliary two-vertex problem stand for
      // x * (quotient root) + y * (sub root).
      for (const Block& b : aux.blocks) {
        DimVec root = b.root[0] * quot.root + b.root[1] * sub.root;
        RootClass cls = classify_root(q_, root);
        check_internal(cls == b.cls, "substituted root changed class");
        out.blocks.push_back(Block{root, b.mult, cls});
      }
      count_assertions(Int(aux.blocks.size()));
    };
    if (sub.cls != RootClass::real) {
      // Neither side is real: alpha itself is a Schur root.
      out.blocks.push_back(Block{alpha, 1, classify_root(q_, alpha)});
    } else if (t == 0) {
      // No extensions between the two sides: they decompose independently.
      out = merge_decomps(CanDecomp{{sub.to_block()}}, CanDecomp{{quot.to_block()}});
    } else if (quot.cls == RootClass::real) {
      substitute(kronecker::candecomp_kronecker(int(t), quot.mult, sub.mult));
    } else if (quot.cls == RootClass::isotropic) {
      substitute(tame_side_case(int(t), quot.mult, sub.mult));
    } else {
      // Non-isotropic quotient: it is its own root.
      check_internal(quot.mult == 1, "non-isotropic side with multiplicity");
      if (sub.mult <= t) {
        out.blocks.push_back(Block{alpha, 1, classify_root(q_, alpha)});
      } else {
        DimVec big = quot.root + t * sub.root;
        out.blocks.push_back(Block{big, 1, classify_root(q_, big)});
        out.blocks.push_back(Block{sub.root, sub.mult - t, RootClass::real});
      }
    }
    out.sort_canonical();
    return out;
  }

  // Two-vertex quiver with one 1-cycle at the first vertex and t arrows to
  // the second, dimension (n, m): decomposed by the reference oracle on its
  // bipartite double.
  CanDecomp tame_side_case(int t, Int n, Int m) {
    HomExtEngine& aux = aux_engine(t);
    DoubleQuiver adq = double_quiver(two_vertex_quiver(1, t, 0));
    CanDecomp up = aux.candecomp_oracle(lift_dimvec(adq, DimVec({n, m})));
    CanDecomp down;
    for (const Block& b : up.blocks) {
      DimVec root = lower_dimvec(adq, b.root);
      down.blocks.push_back(Block{root, b.mult, b.cls});
    }
    down.sort_canonical();
    return down;
  }

  HomExtEngine& aux_engine(int t) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = aux_engines_.find(t);
    if (it == aux_engines_.end()) {
      DoubleQuiver adq = double_quiver(two_vertex_quiver(1, t, 0));
      it = aux_engines_
               .emplace(t, std::make_unique<HomExtEngine>(adq.quiver,
                                                          homext_.max_total()))
               .first;
    }
    return *it->second;
  }

  void ensure_double() {
    std::lock_guard<std::mutex> lk(mu_);
    if (!double_engine_) {
      dq_ = double_quiver(q_);
      double_engine_ =
          std::make_unique<DecompEngine>(dq_.quiver, homext_.max_total());
    }
  }

  void count_assertions(Int k) const {
    std::lock_guard<std::mutex> lk(mu_);
    assertions_ += k;
  }

  Quiver q_;
  HomExtEngine homext_;
  mutable std::mutex mu_;
  mutable Int assertions_ = 0;
  std::unordered_map<DimVec, CanDecomp, DimVecHash> memo_;
  DoubleQuiver dq_;
  std::unique_ptr<DecompEngine> double_engine_;
  std::map<int, std::unique_ptr<HomExtEngine>> aux_engines_;
};

}  // namespace quivermod
