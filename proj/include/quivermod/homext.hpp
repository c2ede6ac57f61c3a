#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quiver.hpp"

namespace quivermod {

enum class RootClass { real, isotropic, non_isotropic };

inline const char* to_string(RootClass c) {
  switch (c) {
    case RootClass::real: return "real";
    case RootClass::isotropic: return "isotropic";
    case RootClass::non_isotropic: return "non-isotropic";
  }
  return "?";
}

// Class of a root by its self-pairing under the non-symmetric form.  Vectors
// with self-pairing > 1 are not roots of any kind, so seeing one here means a
// caller broke its contract.
inline RootClass classify_root(const Quiver& q, const DimVec& root) {
  Int s = euler_form(q, root, root);
  if (s == 1) return RootClass::real;
  if (s == 0) return RootClass::isotropic;
  if (s < 0) return RootClass::non_isotropic;
  throw internal_error("classify_root: self-pairing " + std::to_string(s) +
                       " > 1 for " + root.str());
}

// One summand of a canonical decomposition: `mult` general representations of
// dimension `root`.  Multiplicities of non-isotropic roots are folded into
// the root itself, so their blocks always carry mult == 1.
struct Block {
  DimVec root;
  Int mult = 1;
  RootClass cls = RootClass::real;

  DimVec vec() const { return mult * root; }

  friend bool operator==(const Block& a, const Block& b) {
    return a.root == b.root && a.mult == b.mult && a.cls == b.cls;
  }
};

struct CanDecomp {
  std::vector<Block> blocks;

  bool empty() const { return blocks.empty(); }
  bool single() const { return blocks.size() == 1; }

  DimVec sum(int nverts) const {
    DimVec s(nverts);
    for (const Block& b : blocks) s = s + b.vec();
    return s;
  }

  // Largest root first (graded lexicographic order, descending).
  void sort_canonical() {
    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
      return graded_lex_less(b.root, a.root);
    });
  }

  friend bool operator==(const CanDecomp& a, const CanDecomp& b) {
    return a.blocks == b.blocks;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i) s += " + ";
      s += std::to_string(blocks[i].mult) + "*" + blocks[i].root.str();
    }
    return s + "]";
  }
};

// Combine decompositions of complementary vectors: multiplicities of equal
// roots add.  Equal non-isotropic roots cannot meet here (their mutual
// extensions never vanish), so that case is flagged as a bug.
inline CanDecomp merge_decomps(const CanDecomp& a, const CanDecomp& b) {
  CanDecomp out = a;
  for (const Block& nb : b.blocks) {
    bool found = false;
    for (Block& ob : out.blocks) {
      if (ob.root == nb.root) {
        check_internal(ob.cls == nb.cls, "merge: class mismatch on equal roots");
        check_internal(ob.cls != RootClass::non_isotropic,
                       "merge: duplicate non-isotropic root");
        ob.mult += nb.mult;
        found = true;
        break;
      }
    }
    if (!found) out.blocks.push_back(nb);
  }
  out.sort_canonical();
  return out;
}

// All vectors 0 <= v <= bound, sorted by total dimension then
// lexicographically in vertex order.
inline std::vector<DimVec> boxed_vectors_graded_lex(const DimVec& bound) {
  std::vector<DimVec> out;
  DimVec cur(bound.size());
  while (true) {
    out.push_back(cur);
    int i = bound.size() - 1;
    while (i >= 0 && cur[i] == bound[i]) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), graded_lex_less);
  return out;
}

// Generic homomorphism and extension dimensions between general
// representations, computed by the subvector maximization
//
//   ext(a, b) = max{ -<a', b> : a' a generic subvector of a },
//
// where a' ranges over the dimension vectors of subrepresentations that
// every general representation of a admits, characterized recursively by
// ext(a', a - a') = 0.  All results are memoized per engine; an engine is
// safe to query from several threads.
class HomExtEngine {
 public:
  explicit HomExtEngine(Quiver q, Int max_total = 24)
      : q_(std::move(q)), cap_(max_total) {}

  const Quiver& quiver() const { return q_; }
  Int max_total() const { return cap_; }
  void set_max_total(Int cap) { cap_ = cap; }

  Int generic_ext(const DimVec& a, const DimVec& b) const {
    check_nonneg(q_, a);
    check_nonneg(q_, b);
    check_budget(a);
    check_budget(b);
    return ext_inner(a, b);
  }

  Int generic_hom(const DimVec& a, const DimVec& b) const {
    Int h = euler_form(q_, a, b) + generic_ext(a, b);
    check_internal(h >= 0, "generic hom came out negative");
    return h;
  }

  // Does every general representation of `alpha` contain a subrepresentation
  // of dimension vector `beta`?
  bool is_generic_sub(const DimVec& beta, const DimVec& alpha) const {
    check_nonneg(q_, beta);
    check_nonneg(q_, alpha);
    if (!beta.leq(alpha))
      throw input_error("is_generic_sub: " + beta.str() +
                        " is not componentwise <= " + alpha.str());
    check_budget(alpha);
    return ext_inner(beta, alpha - beta) == 0;
  }

  // Reference decomposition by exhaustive splitting: find the graded-lex
  // least proper summand whose extensions against the complement vanish both
  // ways, recurse on the two halves, and merge.  Exponential by design; kept
  // as the ground truth the fast algorithm is compared against.
  CanDecomp candecomp_oracle(const DimVec& alpha) const {
    check_nonneg(q_, alpha);
    check_budget(alpha);
    if (alpha.is_zero()) return CanDecomp{};
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = oracle_memo_.find(alpha);
      if (it != oracle_memo_.end()) return it->second;
    }
    CanDecomp result;
    bool split = false;
    for (const DimVec& beta : boxed_vectors_graded_lex(alpha)) {
      if (beta.is_zero() || beta == alpha) continue;
      DimVec gamma = alpha - beta;
      if (ext_inner(beta, gamma) == 0 && ext_inner(gamma, beta) == 0) {
        result = merge_decomps(candecomp_oracle(beta), candecomp_oracle(gamma));
        split = true;
        break;
      }
    }
    if (!split)
      result.blocks.push_back(Block{alpha, 1, classify_root(q_, alpha)});
    std::lock_guard<std::mutex> lk(mu_);
    oracle_memo_.emplace(alpha, result);
    return result;
  }

  bool is_schur_oracle(const DimVec& alpha) const {
    check_nonneg(q_, alpha);
    if (alpha.is_zero()) return false;
    CanDecomp d = candecomp_oracle(alpha);
    return d.single() && d.blocks[0].mult == 1 && d.blocks[0].root == alpha;
  }

 private:
  void check_budget(const DimVec& d) const {
    if (d.total() > cap_)
      throw resource_error("total dimension " + std::to_string(d.total()) +
                           " exceeds the search budget " +
                           std::to_string(cap_) + " (raise --max-total)");
  }

  Int ext_inner(const DimVec& a, const DimVec& b) const {
    if (a.is_zero() || b.is_zero()) return 0;
    auto key = std::make_pair(a, b);
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = ext_memo_.find(key);
      if (it != ext_memo_.end()) return it->second;
    }
    // Walk the box 0 <= a' <= a with a plain odometer; only the maximum
    // matters, so enumeration order is irrelevant here.
    Int best = 0;  // a' = 0 contributes 0
    DimVec sub(a.size());
    while (true) {
      int i = a.size() - 1;
      while (i >= 0 && sub[i] == a[i]) {
        sub[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++sub[i];
      // a' is a generic subvector of a  iff  ext(a', a - a') = 0;
      // a' = a always qualifies (ext against 0 vanishes).
      if (ext_inner(sub, a - sub) == 0)
        best = std::max(best, -euler_form(q_, sub, b));
    }
    std::lock_guard<std::mutex> lk(mu_);
    ext_memo_.emplace(key, best);
    return best;
  }

  Quiver q_;
  Int cap_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::pair<DimVec, DimVec>, Int, DimVecPairHash>
      ext_memo_;
  mutable std::unordered_map<DimVec, CanDecomp, DimVecHash> oracle_memo_;
};

}  // namespace quivermod
