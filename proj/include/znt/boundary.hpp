#pragma once

#include <map>
#include <string>
#include <vector>

#include "znt/group.hpp"

namespace znt {

// An end of the tree: symbolic (base o tail o tail o ... without bound) or
// empirical (a monotone chain of prefixes from a walk, with finite resolution).
struct BoundaryPoint {
  enum class Kind { Symbolic, Empirical };
  Kind kind = Kind::Symbolic;
  Word base, tail;           // symbolic; tail nonempty, cyclically reduced
  std::vector<Word> chain;   // empirical; strictly increasing prefixes
  int declared_type = 0;     // empirical: the producer's end-type lower bound
};

BoundaryPoint symbolic_end(Word base, Word tail);
BoundaryPoint empirical_end(std::vector<Word> chain, int declared_type);

// A vertex of the tree or one of its ends; the argument type of the metrics.
struct TreePoint {
  enum class Kind { Vertex, End };
  Kind kind;
  Word vertex;
  BoundaryPoint end;

  static TreePoint of(const Vertex& v) { return {Kind::Vertex, v.prefix, {}}; }
  static TreePoint of(const Word& w) { return {Kind::Vertex, w, {}}; }
  static TreePoint of(BoundaryPoint e) { return {Kind::End, {}, std::move(e)}; }
};

// a symbolic ray prefix of length at least `floor` (expanding the tail)
Word ray_prefix(const BoundaryPoint& p, const ZVec& floor);
bool same_end(const BoundaryPoint& a, const BoundaryPoint& b);

struct EndType {
  int type;    // k: the ray is a Z^k-ray (a lower bound for empirical points)
  bool exact;
};
EndType classify_end(const BoundaryPoint& p);

// (x.y)_base = d(base, Y(base,x,y)); integral on tree points. Boundary points
// are resolved through their rays; equal ends have no finite product.
ZVec gromov(const TreePoint& x, const TreePoint& y, const Word& base);

// e^{-(x.y)_base} with the x = y case pinned to 0. Defined on one Z-subtree
// closure: any points when dim = 1, otherwise the inputs must lie in a common
// class (flat pairwise distances); cross-class inputs are rejected.
double d_ultra(const TreePoint& x, const TreePoint& y, const Word& base);

// --- the explored tree of Z^{n-1}-subtrees ------------------------------------

struct ClassInfo {
  Word anchor;
  long level = 0;   // Delta-distance from the class of the base vertex
  long index = 0;   // 1-based discovery index within the level
  double scale = 1.0;
  Word parent;      // anchor of the class one level down (level > 0)
};

// Snapshot of the explored region: every class any geodesic between explored
// vertices can cross, keyed by its canonical anchor. Indices are breadth-first
// per level with ties broken by canonical anchor order, 1-based; the class of
// the base vertex is unscaled.
class TreeSnapshot {
 public:
  static TreeSnapshot explore(const Group& G, int radius);

  int dim() const { return dim_; }
  long max_level() const { return max_level_; }
  const ClassInfo* find(const Word& anchor) const;
  long level_count(long level) const;
  // scale of a class along a symbolic tail outside the snapshot: the next
  // index its level would be assigned
  double virtual_scale(long level) const;
  const std::vector<ClassInfo>& classes() const { return ordered_; }

  const Alphabet& alphabet() const { return ab_; }

 private:
  int dim_ = 1;
  long max_level_ = 0;
  std::map<Word, ClassInfo, CanonicalWordLess> by_anchor_;
  std::vector<ClassInfo> ordered_;
  std::vector<long> level_counts_;
  Alphabet ab_;
};

// anchor of the class holding w's row-h positions, 0 <= h <= height(|w|)
Word class_anchor_at(const Word& w, const Int& h);

struct MetricTraceRow {
  Word anchor;
  long level;
  long index;   // 0 marks a virtual (tail) class
  double scale;
  double term;  // scale * inner ultrametric value
};

struct MetricValue {
  double value = 0;
  double error = 0;  // truncation bound for empirical ends
  std::vector<MetricTraceRow> trace;
  double tail = 0;   // closed-form remainder beyond the snapshot's levels
};

// The rescaled metric on the explored compactification. dim 1 falls back to
// the ultrametric; dim 2 runs the class recursion. Vertex queries outside the
// snapshot raise Unexplored naming the missing class.
MetricValue dbar(const TreeSnapshot& S, const TreePoint& x, const TreePoint& y);

// diameter constant of one Z^{m}-subtree compactification: 1, 2, 4, ...
double diameter_bound(int m);

// --- lines and balls -----------------------------------------------------------

struct LineBetween {
  BoundaryPoint a, b;
  Word meet;  // the vertex where the rays from the base diverge
};
LineBetween line_between(const BoundaryPoint& a, const BoundaryPoint& b);
bool line_contains(const LineBetween& line, const Vertex& v);

// B_delta(x) in the compactified Z-tree (dim 1): the whole space, a single
// vertex, or the cone at the prefix closest to the base
struct CompactBall {
  enum class Kind { Whole, Singleton, Cone } kind;
  Word at;
};
CompactBall ball_in_compactification(const TreePoint& x, double delta);

// The translate g.U_apex expressed over the base vertex: a cone or a cone
// complement.
struct ConeExpr {
  bool complement = false;
  Word apex;
};
ConeExpr translate_cone(const Word& g, const Word& apex);

}  // namespace znt
