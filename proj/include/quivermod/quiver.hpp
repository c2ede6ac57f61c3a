#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace quivermod {

struct Arrow {
  std::string name;
  int src = 0;
  int tgt = 0;
};

// Finite directed multigraph.  Parallel arrows and arrows from a vertex to
// itself ("1-cycles") are both allowed.  Vertices keep declaration order and
// every deterministic tie-break in this library uses that order.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : names_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
      if (names_[i].empty()) throw input_error("empty vertex name");
      if (!index_.emplace(names_[i], i).second)
        throw input_error("duplicate vertex name: " + names_[i]);
    }
    std::unordered_set<std::string> arrow_names;
    for (const Arrow& a : arrows_) {
      if (a.name.empty()) throw input_error("empty arrow name");
      if (!arrow_names.insert(a.name).second)
        throw input_error("duplicate arrow name: " + a.name);
      if (a.src < 0 || a.src >= num_vertices() || a.tgt < 0 ||
          a.tgt >= num_vertices())
        throw input_error("arrow endpoint out of range: " + a.name);
    }
  }

  // Convenience constructor with arrows given as (name, source, target) over
  // vertex names.
  static Quiver make(std::vector<std::string> vertices,
                     const std::vector<std::array<std::string, 3>>& arrows) {
    Quiver tmp(std::move(vertices), {});
    std::vector<Arrow> as;
    as.reserve(arrows.size());
    for (const auto& t : arrows)
      as.push_back(Arrow{t[0], tmp.vertex_index(t[1]), tmp.vertex_index(t[2])});
    return Quiver(tmp.names_, std::move(as));
  }

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::string& vertex_name(int v) const { return names_.at(v); }

  int vertex_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw input_error("unknown vertex: " + name);
    return it->second;
  }

  bool has_vertex(const std::string& name) const {
    return index_.count(name) != 0;
  }

  bool has_one_cycle_at(int v) const {
    for (const Arrow& a : arrows_)
      if (a.src == v && a.tgt == v) return true;
    return false;
  }

  // Compact structural description, usable as a cache key and in reports.
  std::string signature() const {
    std::string s = "V[";
    for (int i = 0; i < num_vertices(); ++i) {
      if (i) s += ',';
      s += names_[i];
    }
    s += "]A[";
    for (int i = 0; i < num_arrows(); ++i) {
      if (i) s += ',';
      s += std::to_string(arrows_[i].src) + ">" + std::to_string(arrows_[i].tgt);
    }
    s += ']';
    return s;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, int> index_;
};

// Element of the free abelian group on the vertices of a fixed quiver, stored
// in vertex order.  Negative entries are legal (root-lattice arithmetic);
// operations that need genuine dimension vectors check non-negativity.
struct DimVec {
  std::vector<Int> e;

  DimVec() = default;
  explicit DimVec(int n) : e(n, 0) {}
  explicit DimVec(std::vector<Int> entries) : e(std::move(entries)) {}

  int size() const { return static_cast<int>(e.size()); }
  Int operator[](int v) const { return e.at(v); }
  Int& operator[](int v) { return e.at(v); }

  Int total() const { return std::accumulate(e.begin(), e.end(), Int{0}); }
  bool is_zero() const {
    return std::all_of(e.begin(), e.end(), [](Int x) { return x == 0; });
  }
  bool all_nonneg() const {
    return std::all_of(e.begin(), e.end(), [](Int x) { return x >= 0; });
  }

  friend DimVec operator+(const DimVec& a, const DimVec& b) {
    DimVec r = a;
    for (int i = 0; i < r.size(); ++i) r.e[i] += b[i];
    return r;
  }
  friend DimVec operator-(const DimVec& a, const DimVec& b) {
    DimVec r = a;
    for (int i = 0; i < r.size(); ++i) r.e[i] -= b[i];
    return r;
  }
  friend DimVec operator*(Int k, const DimVec& a) {
    DimVec r = a;
    for (Int& x : r.e) x *= k;
    return r;
  }
  friend bool operator==(const DimVec& a, const DimVec& b) { return a.e == b.e; }
  friend bool operator!=(const DimVec& a, const DimVec& b) { return a.e != b.e; }

  // Componentwise partial order.
  bool leq(const DimVec& b) const {
    for (int i = 0; i < size(); ++i)
      if (e[i] > b[i]) return false;
    return true;
  }

  static DimVec unit(int n, int v) {
    DimVec r(n);
    r[v] = 1;
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) s += ',';
      s += std::to_string(e[i]);
    }
    return s + ")";
  }
};

// Total order used wherever ties must break deterministically: by total
// dimension first, then lexicographically in vertex order.
inline bool graded_lex_less(const DimVec& a, const DimVec& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  return a.e < b.e;
}

struct DimVecHash {
  std::size_t operator()(const DimVec& d) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (Int x : d.e)
      h = h * 1099511628211ull ^ std::hash<Int>()(x);
    return h;
  }
};

struct DimVecPairHash {
  std::size_t operator()(const std::pair<DimVec, DimVec>& p) const {
    return DimVecHash()(p.first) * 31 + DimVecHash()(p.second);
  }
};

inline void check_sized(const Quiver& q, const DimVec& d) {
  if (d.size() != q.num_vertices())
    throw input_error("dimension vector has " + std::to_string(d.size()) +
                      " entries, quiver has " +
                      std::to_string(q.num_vertices()) + " vertices");
}

inline void check_nonneg(const Quiver& q, const DimVec& d) {
  check_sized(q, d);
  if (!d.all_nonneg())
    throw input_error("dimension vector " + d.str() + " has negative entries");
}

// <a,b> = sum_v a(v)b(v) - sum_arrows a(src)b(tgt).  Not symmetric.
inline Int euler_form(const Quiver& q, const DimVec& a, const DimVec& b) {
  check_sized(q, a);
  check_sized(q, b);
  Int s = 0;
  for (int v = 0; v < q.num_vertices(); ++v) s += a[v] * b[v];
  for (const Arrow& ar : q.arrows()) s -= a[ar.src] * b[ar.tgt];
  return s;
}

// Symmetrization  (a,b) = <a,b> + <b,a>.
inline Int kac_form(const Quiver& q, const DimVec& a, const DimVec& b) {
  return euler_form(q, a, b) + euler_form(q, b, a);
}

// Reflection at v in the hyperplane where the symmetric form with e_v
// vanishes.  Undefined at vertices carrying an arrow to themselves.
inline DimVec reflect(const Quiver& q, int v, const DimVec& a) {
  check_sized(q, a);
  if (v < 0 || v >= q.num_vertices()) throw input_error("vertex out of range");
  if (q.has_one_cycle_at(v))
    throw input_error("reflection undefined at vertex '" + q.vertex_name(v) +
                      "': it carries a 1-cycle");
  DimVec r = a;
  r[v] -= kac_form(q, a, DimVec::unit(q.num_vertices(), v));
  return r;
}

inline std::vector<int> sources(const Quiver& q) {
  std::vector<char> is_tgt(q.num_vertices(), 0);
  for (const Arrow& a : q.arrows()) is_tgt[a.tgt] = 1;
  std::vector<int> out;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (!is_tgt[v]) out.push_back(v);
  return out;
}

inline std::vector<int> sinks(const Quiver& q) {
  std::vector<char> is_src(q.num_vertices(), 0);
  for (const Arrow& a : q.arrows()) is_src[a.src] = 1;
  std::vector<int> out;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (!is_src[v]) out.push_back(v);
  return out;
}

// True when the quiver has no oriented cycle (1-cycles count).
inline bool is_acyclic(const Quiver& q) {
  // Kahn peeling.
  std::vector<int> indeg(q.num_vertices(), 0);
  for (const Arrow& a : q.arrows()) ++indeg[a.tgt];
  std::vector<int> stack;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++seen;
    for (const Arrow& a : q.arrows())
      if (a.src == v && --indeg[a.tgt] == 0) stack.push_back(a.tgt);
  }
  return seen == q.num_vertices();
}

// Weak connectivity of the whole quiver (empty and one-vertex quivers count
// as connected).
inline bool is_connected(const Quiver& q) {
  if (q.num_vertices() <= 1) return true;
  std::vector<char> vis(q.num_vertices(), 0);
  std::vector<int> stack{0};
  vis[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Arrow& a : q.arrows()) {
      int u = -1;
      if (a.src == v) u = a.tgt;
      else if (a.tgt == v) u = a.src;
      if (u >= 0 && !vis[u]) {
        vis[u] = 1;
        stack.push_back(u);
      }
    }
  }
  return std::all_of(vis.begin(), vis.end(), [](char c) { return c != 0; });
}

// Vertex sets of the weakly connected components, each sorted in vertex
// order; components ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Quiver& q) {
  std::vector<int> comp(q.num_vertices(), -1);
  int next = 0;
  for (int start = 0; start < q.num_vertices(); ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Arrow& a : q.arrows()) {
        int u = -1;
        if (a.src == v) u = a.tgt;
        else if (a.tgt == v) u = a.src;
        if (u >= 0 && comp[u] < 0) {
          comp[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  std::vector<std::vector<int>> out(next);
  for (int v = 0; v < q.num_vertices(); ++v) out[comp[v]].push_back(v);
  return out;
}

// A full subquiver together with the embedding of its vertices into the
// parent.  vertex_map[i] is the parent index of subquiver vertex i.
struct Subquiver {
  Quiver quiver;
  std::vector<int> vertex_map;

  // Transport a vector on the subquiver back to the parent (zero elsewhere).
  DimVec extend(const DimVec& d, int parent_size) const {
    DimVec out(parent_size);
    for (int i = 0; i < static_cast<int>(vertex_map.size()); ++i)
      out[vertex_map[i]] = d[i];
    return out;
  }

  // Restrict a parent vector; entries off the subquiver must be zero unless
  // `allow_truncate` is set.
  DimVec restrict(const DimVec& d) const {
    DimVec out(static_cast<int>(vertex_map.size()));
    for (int i = 0; i < static_cast<int>(vertex_map.size()); ++i)
      out[i] = d[vertex_map[i]];
    return out;
  }
};

// Full subquiver on a subset of vertices (given in increasing vertex order).
inline Subquiver restrict_to(const Quiver& q, const std::vector<int>& verts) {
  std::vector<int> pos(q.num_vertices(), -1);
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
    pos[verts[i]] = i;
    names.push_back(q.vertex_name(verts[i]));
  }
  std::vector<Arrow> arrows;
  for (const Arrow& a : q.arrows())
    if (pos[a.src] >= 0 && pos[a.tgt] >= 0)
      arrows.push_back(Arrow{a.name, pos[a.src], pos[a.tgt]});
  return Subquiver{Quiver(std::move(names), std::move(arrows)), verts};
}

// Maximal subquiver on the vertices where the vector is nonzero.
inline Subquiver support(const Quiver& q, const DimVec& d) {
  check_sized(q, d);
  std::vector<int> verts;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (d[v] != 0) verts.push_back(v);
  return restrict_to(q, verts);
}

// Greatest common divisor of the entries; rejects the zero vector.
inline Int greatest_divisor(const DimVec& d) {
  Int g = 0;
  for (Int x : d.e) g = std::gcd(g, x);
  if (g == 0) throw input_error("greatest divisor of the zero vector");
  return g;
}

// Membership in the fundamental region: nonzero, and the symmetric pairing
// with every coordinate vector is <= 0.  Connectivity of the support is NOT
// part of this predicate; callers combine the two as needed.  Restricted to
// vectors whose support avoids 1-cycle vertices, because the defining
// comparison with the reflections is meaningless there.
inline bool is_fundamental(const Quiver& q, const DimVec& d) {
  check_nonneg(q, d);
  if (d.is_zero()) return false;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (d[v] != 0 && q.has_one_cycle_at(v))
      throw input_error(
          "fundamental-region test undefined: support touches the 1-cycle "
          "vertex '" + q.vertex_name(v) + "'");
  for (int v = 0; v < q.num_vertices(); ++v)
    if (kac_form(q, d, DimVec::unit(q.num_vertices(), v)) > 0) return false;
  return true;
}

// Radical vector of an affine-type support: connected support and the
// symmetric pairing with every supported coordinate vector vanishes.
inline bool is_null_dimvec(const Quiver& q, const DimVec& d) {
  check_nonneg(q, d);
  if (d.is_zero()) throw input_error("null test on the zero vector");
  Subquiver sup = support(q, d);
  if (!is_connected(sup.quiver)) return false;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (d[v] != 0 &&
        kac_form(q, d, DimVec::unit(q.num_vertices(), v)) != 0)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Opposite and separated-double constructions.

inline Quiver dual_quiver(const Quiver& q) {
  std::vector<Arrow> arrows;
  arrows.reserve(q.num_arrows());
  for (const Arrow& a : q.arrows())
    arrows.push_back(Arrow{a.name, a.tgt, a.src});
  return Quiver(q.vertex_names(), std::move(arrows));
}

// Bipartite separated double: two copies of each vertex, a connector arrow
// from the 0-copy to the 1-copy of each vertex, and each original arrow
// re-routed from the 0-copy of its source to the 1-copy of its target.  The
// result is acyclic for every input.  Vertex order: all 0-copies in original
// order, then all 1-copies.
struct DoubleQuiver {
  Quiver quiver;
  int base = 0;  // number of vertices of the original quiver

  int copy0(int v) const { return v; }
  int copy1(int v) const { return base + v; }
};

inline DoubleQuiver double_quiver(const Quiver& q) {
  const int n = q.num_vertices();
  std::vector<std::string> names;
  names.reserve(2 * n);
  for (int i = 0; i < n; ++i) names.push_back(q.vertex_name(i) + "#0");
  for (int i = 0; i < n; ++i) names.push_back(q.vertex_name(i) + "#1");
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i)
    arrows.push_back(Arrow{q.vertex_name(i) + "#c", i, n + i});
  for (const Arrow& a : q.arrows())
    arrows.push_back(Arrow{a.name + "#0", a.src, n + a.tgt});
  return DoubleQuiver{Quiver(std::move(names), std::move(arrows)), n};
}

inline DimVec lift_dimvec(const DoubleQuiver& dq, const DimVec& d) {
  if (d.size() != dq.base)
    throw input_error("lift: vector size does not match the base quiver");
  DimVec out(2 * dq.base);
  for (int v = 0; v < dq.base; ++v) {
    out[dq.copy0(v)] = d[v];
    out[dq.copy1(v)] = d[v];
  }
  return out;
}

// Inverse of lift_dimvec; rejects vectors that are not balanced across the
// two copies.
inline DimVec lower_dimvec(const DoubleQuiver& dq, const DimVec& d) {
  if (d.size() != 2 * dq.base)
    throw input_error("lower: vector size does not match the double quiver");
  DimVec out(dq.base);
  for (int v = 0; v < dq.base; ++v) {
    if (d[dq.copy0(v)] != d[dq.copy1(v)])
      throw internal_error("lower_dimvec: vector is not of lifted form at '" +
                           dq.quiver.vertex_name(v) + "'");
    out[v] = d[dq.copy0(v)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stock quivers.

// Two vertices v, w and n parallel arrows v -> w (n >= 0).
inline Quiver kronecker_quiver(int n) {
  if (n < 0) throw input_error("negative arrow count");
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i)
    arrows.push_back(Arrow{"a" + std::to_string(i), 0, 1});
  return Quiver({"v", "w"}, std::move(arrows));
}

// Two vertices with p 1-cycles at v, q 1-cycles at w and t arrows v -> w.
inline Quiver two_vertex_quiver(int p, int t, int q) {
  if (p < 0 || t < 0 || q < 0) throw input_error("negative arrow count");
  std::vector<Arrow> arrows;
  for (int i = 0; i < p; ++i)
    arrows.push_back(Arrow{"lv" + std::to_string(i), 0, 0});
  for (int i = 0; i < t; ++i)
    arrows.push_back(Arrow{"a" + std::to_string(i), 0, 1});
  for (int i = 0; i < q; ++i)
    arrows.push_back(Arrow{"lw" + std::to_string(i), 1, 1});
  return Quiver({"v", "w"}, std::move(arrows));
}

// ---------------------------------------------------------------------------
// Reflection words.

// One reflection step: sign +1 reflects at a source, -1 at a sink of the
// quiver current at that step.  A word is a step sequence optionally followed
// by one dualization; module-level conventions say how the underlying quiver
// evolves along the word (see the generalized Kronecker routines for the
// two-vertex convention, where each step is followed by the canonical vertex
// transposition so the quiver never changes).
struct ReflectionStep {
  int vertex = 0;
  int sign = +1;
};

struct ReflectionWord {
  std::vector<ReflectionStep> steps;
  bool dualize = false;

  bool empty() const { return steps.empty() && !dualize; }
};

}  // namespace quivermod
