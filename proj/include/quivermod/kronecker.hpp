#pragma once

#include <numeric>
#include <string>
#include <utility>

#include "errors.hpp"
#include "homext.hpp"
#include "quiver.hpp"

// Classification of general representations of the two-vertex quiver with n
// parallel arrows from the source v to the sink w.  Dimension vectors are
// written (a, b) = (dim at v, dim at w).
//
// Convention for reflections on this quiver: reflecting at the source or the
// sink reverses all arrows, and the resulting quiver is identified with the
// original one by swapping the two vertices.  Every step below bakes that
// transposition in, so a step maps (a, b) to another pair for the *same*
// quiver:
//
//   source step ("+"):  (a, b) -> (b, n*b - a)
//   sink   step ("-"):  (a, b) -> (n*a - b, a)
//
// Dualization is the plain coordinate swap, and it commutes with the steps up
// to exchanging their signs, so any mixture normalizes to "steps first, one
// optional dualization last" — exactly the shape ReflectionWord stores.
namespace quivermod::kronecker {

inline std::pair<Int, Int> step_source(int n, std::pair<Int, Int> ab) {
  return {ab.second, Int(n) * ab.second - ab.first};
}

inline std::pair<Int, Int> step_sink(int n, std::pair<Int, Int> ab) {
  return {Int(n) * ab.first - ab.second, ab.first};
}

// Dimension vector of the l-th preprojective: P(0) = (0,1) is the simple at
// the sink, and each source step produces the next one.
inline DimVec preprojective_dim(int n, int l) {
  if (n < 1) throw input_error("preprojective_dim needs at least one arrow");
  if (l < 0) throw input_error("negative preprojective index");
  std::pair<Int, Int> ab{0, 1};
  for (int i = 0; i < l; ++i) ab = step_source(n, ab);
  return DimVec({ab.first, ab.second});
}

// Preinjectives are the duals of the preprojectives: I(l) = swap of P(l).
inline DimVec preinjective_dim(int n, int l) {
  DimVec p = preprojective_dim(n, l);
  return DimVec({p[1], p[0]});
}

enum class KClassTag { preprojective, preinjective, schur_root, divisible_null };

inline const char* to_string(KClassTag t) {
  switch (t) {
    case KClassTag::preprojective: return "preprojective";
    case KClassTag::preinjective: return "preinjective";
    case KClassTag::schur_root: return "schur_root";
    case KClassTag::divisible_null: return "divisible_null";
  }
  return "?";
}

// Outcome of the classification:
//  - preprojective / preinjective: a general representation is
//    P(l)^c + P(l+1)^d (resp. I(l)^c + I(l+1)^d);
//  - schur_root: the reflection word carries (a, b) to the fundamental
//    region, where it stays a Schur root;
//  - divisible_null: n = 2 and (a, b) = h * (1, 1) with h > 1.
// `h` is always the greatest common divisor of a and b.
struct KroneckerClass {
  KClassTag tag = KClassTag::schur_root;
  int l = 0;
  Int c = 0, d = 0;
  Int h = 1;
  ReflectionWord word;
};

namespace detail {

inline ReflectionStep flip(ReflectionStep s) {
  return ReflectionStep{1 - s.vertex, -s.sign};
}

// Translate a classification of the swapped vector back through the
// dualization at the entry of the recursion.
inline KroneckerClass dualized(KroneckerClass r) {
  if (r.tag == KClassTag::preprojective) r.tag = KClassTag::preinjective;
  else if (r.tag == KClassTag::preinjective) r.tag = KClassTag::preprojective;
  for (ReflectionStep& s : r.word.steps) s = flip(s);
  r.word.dualize = !r.word.dualize;
  return r;
}

// Translate a classification of the sink-step image back through that step.
inline KroneckerClass undo_sink_step(KroneckerClass r) {
  switch (r.tag) {
    case KClassTag::preprojective:
      ++r.l;
      break;
    case KClassTag::preinjective:
      if (r.l >= 1) --r.l;
      else {
        // I(0) cannot appear after an inverse sink step (it would mean the
        // general representation had a simple summand at the source).
        check_internal(r.c == 0, "inverse sink step reached I(0)");
        r.c = r.d;
        r.d = 0;
      }
      break;
    case KClassTag::schur_root:
    case KClassTag::divisible_null:
      break;
  }
  r.word.steps.insert(r.word.steps.begin(), ReflectionStep{1, -1});
  return r;
}

inline KroneckerClass normalized(KroneckerClass r) {
  if ((r.tag == KClassTag::preprojective || r.tag == KClassTag::preinjective) &&
      r.c == 0 && r.d > 0) {
    ++r.l;
    r.c = r.d;
    r.d = 0;
  }
  return r;
}

}  // namespace detail

// Descending recursion: dualize into a <= b; if n*a <= b a general
// representation is P(1)^a + P(0)^(b-n*a); if 2*b <= n*a the vector sits in
// the fundamental region; otherwise a sink step shrinks it strictly.
inline KroneckerClass classify(int n, Int a, Int b) {
  if (n < 1) throw input_error("classification needs at least one arrow");
  if (a < 0 || b < 0 || (a == 0 && b == 0))
    throw input_error("classify needs a nonzero non-negative vector");
  if (a > b) return detail::dualized(classify(n, b, a));
  KroneckerClass r;
  r.h = std::gcd(a, b);
  if (Int(n) * a <= b) {
    r.tag = KClassTag::preprojective;
    r.l = 0;
    r.c = b - Int(n) * a;
    r.d = a;
    return detail::normalized(r);
  }
  if (2 * b <= Int(n) * a) {
    if (n == 2 && a == b && a > 1) {
      r.tag = KClassTag::divisible_null;
      return r;
    }
    r.tag = KClassTag::schur_root;
    return r;
  }
  return detail::undo_sink_step(classify(n, Int(n) * a - b, a));
}

// Apply a word in the reduction direction (steps in order, then the optional
// dualization).
inline std::pair<Int, Int> apply_word(int n, const ReflectionWord& w,
                                      std::pair<Int, Int> ab) {
  for (const ReflectionStep& s : w.steps) {
    if (s.vertex == 0 && s.sign == +1) ab = step_source(n, ab);
    else if (s.vertex == 1 && s.sign == -1) ab = step_sink(n, ab);
    else
      throw input_error("word step must reflect at the source or the sink");
  }
  if (w.dualize) std::swap(ab.first, ab.second);
  return ab;
}

// Inverse of apply_word: carries the reduced vector back to the original.
inline std::pair<Int, Int> unapply_word(int n, const ReflectionWord& w,
                                        std::pair<Int, Int> ab) {
  if (w.dualize) std::swap(ab.first, ab.second);
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) {
    if (it->vertex == 0 && it->sign == +1) ab = step_sink(n, ab);
    else if (it->vertex == 1 && it->sign == -1) ab = step_source(n, ab);
    else
      throw input_error("word step must reflect at the source or the sink");
  }
  return ab;
}

// Canonical decomposition read off the classification.
inline CanDecomp candecomp_kronecker(int n, Int a, Int b) {
  KroneckerClass cls = classify(n, a, b);
  Quiver q = kronecker_quiver(n);
  CanDecomp out;
  auto push = [&](const DimVec& root, Int mult) {
    if (mult > 0) out.blocks.push_back(Block{root, mult, classify_root(q, root)});
  };
  switch (cls.tag) {
    case KClassTag::preprojective:
      push(preprojective_dim(n, cls.l), cls.c);
      push(preprojective_dim(n, cls.l + 1), cls.d);
      break;
    case KClassTag::preinjective:
      push(preinjective_dim(n, cls.l), cls.c);
      push(preinjective_dim(n, cls.l + 1), cls.d);
      break;
    case KClassTag::schur_root:
      out.blocks.push_back(Block{DimVec({a, b}), 1,
                                 classify_root(q, DimVec({a, b}))});
      break;
    case KClassTag::divisible_null:
      check_internal(n == 2, "divisible null vector away from two arrows");
      out.blocks.push_back(Block{DimVec({1, 1}), cls.h, RootClass::isotropic});
      break;
  }
  out.sort_canonical();
  return out;
}

}  // namespace quivermod::kronecker
