#include "znt/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "znt/parse.hpp"

namespace znt {

// --- boundary points -----------------------------------------------------------

BoundaryPoint symbolic_end(Word base, Word tail) {
  if (tail.empty()) fail(ErrKind::Range, "a symbolic end needs a nonempty tail");
  if (!is_cyclically_reduced(tail)) fail(ErrKind::NotReduced, "end tail is not cyclically reduced");
  (void)concat(tail, tail);  // self junction
  if (!base.empty()) (void)concat(base, tail);
  BoundaryPoint p;
  p.kind = BoundaryPoint::Kind::Symbolic;
  p.base = std::move(base);
  p.tail = std::move(tail);
  return p;
}

BoundaryPoint empirical_end(std::vector<Word> chain, int declared_type) {
  if (chain.empty()) fail(ErrKind::Range, "empty chain");
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!(chain[i].length() < chain[i + 1].length()) ||
        c_len(chain[i], chain[i + 1]) != chain[i].length())
      fail(ErrKind::Range, "chain entries must be strictly increasing prefixes");
  }
  BoundaryPoint p;
  p.kind = BoundaryPoint::Kind::Empirical;
  p.chain = std::move(chain);
  p.declared_type = declared_type;
  return p;
}

// base o tail^copies
static Word ray_expand(const BoundaryPoint& p, long copies) {
  if (p.kind == BoundaryPoint::Kind::Empirical) return p.chain.back();
  Word w = p.base;
  for (long i = 0; i < copies; ++i) w = concat(w, p.tail);
  return w;
}

Word ray_prefix(const BoundaryPoint& p, const ZVec& floor) {
  if (p.kind == BoundaryPoint::Kind::Empirical) {
    if (p.chain.back().length() >= floor) return p.chain.back();
    fail(ErrKind::Precision, "empirical end below the requested resolution");
  }
  Word w = p.base;
  long copies = 1;
  for (int rounds = 0; rounds < 64; ++rounds) {
    if (w.length() >= floor) return w;
    for (long i = 0; i < copies; ++i) w = concat(w, p.tail);
    copies *= 2;
  }
  fail(ErrKind::Range, "ray floor unreachable");
}

EndType classify_end(const BoundaryPoint& p) {
  if (p.kind == BoundaryPoint::Kind::Symbolic) {
    const ZVec& len = p.tail.length();
    for (int i = len.dim() - 1; i >= 0; --i)
      if (len[i] != 0) return {i + 1, true};
    return {1, true};  // unreachable: tails are nonempty
  }
  if (p.declared_type > 0) return {p.declared_type, false};
  if (p.chain.size() < 2) return {1, false};
  ZVec delta = p.chain.back().length() - p.chain[p.chain.size() / 2].length();
  for (int i = delta.dim() - 1; i >= 0; --i)
    if (delta[i] != 0) return {i + 1, false};
  return {1, false};
}

bool same_end(const BoundaryPoint& a, const BoundaryPoint& b) {
  if (a.kind != b.kind) {
    // a symbolic ray settles it at the empirical point's resolution if they split early
    const BoundaryPoint& emp = a.kind == BoundaryPoint::Kind::Empirical ? a : b;
    const BoundaryPoint& sym = a.kind == BoundaryPoint::Kind::Empirical ? b : a;
    Word deep = emp.chain.back();
    Word s = ray_prefix(sym, deep.length());
    if (c_len(deep, s) < deep.length()) return false;
    fail(ErrKind::Precision, "empirical end too shallow to separate from the ray");
  }
  if (a.kind == BoundaryPoint::Kind::Empirical)
    fail(ErrKind::Precision, "empirical ends are compared through cones, not directly");
  // rays of distinct ends split within base lengths plus two tail rounds
  ZVec probe = a.base.length() + b.base.length() + Int(2) * (a.tail.length() + b.tail.length());
  ZVec floor = probe + ZVec::one(probe.dim());
  Word ra = ray_prefix(a, floor), rb = ray_prefix(b, floor);
  ZVec cut = std::min(ra.length(), rb.length(), [](const ZVec& x, const ZVec& y) { return x < y; });
  return split(ra, cut).first == split(rb, cut).first;
}

// --- stabilised products ---------------------------------------------------------

namespace {

struct RepSrc {
  std::function<Word(long)> rep;  // a vertex on the ray at expansion k
  bool grows = false;
  bool empirical = false;
};

RepSrc rep_of(const TreePoint& t) {
  if (t.kind == TreePoint::Kind::Vertex) return {[&t](long) { return t.vertex; }, false, false};
  const BoundaryPoint& e = t.end;
  if (e.kind == BoundaryPoint::Kind::Empirical)
    return {[&e](long) { return e.chain.back(); }, false, true};
  return {[&e](long k) { return ray_expand(e, k); }, true, false};
}

// c(base^-1 x, base^-1 y) once both sides are resolved past the meeting point.
ZVec stable_product(const RepSrc& X, const RepSrc& Y, const Word& base) {
  Word bi = invert(base);
  std::optional<ZVec> prev;
  for (long k = 2; k <= (1L << 16); k *= 4) {
    Word rx = mult(bi, X.rep(k)), ry = mult(bi, Y.rep(k));
    ZVec c = c_len(rx, ry);
    bool x_full = c == rx.length(), y_full = c == ry.length();
    if (X.empirical && x_full)
      fail(ErrKind::Precision, "empirical end below resolution for this product");
    if (Y.empirical && y_full)
      fail(ErrKind::Precision, "empirical end below resolution for this product");
    if ((!x_full || !X.grows) && (!y_full || !Y.grows)) return c;
    if (prev && *prev == c && !X.empirical && !Y.empirical) return c;
    prev = c;
  }
  fail(ErrKind::Range, "gromov product did not stabilise (equal boundary points?)");
}

Word stable_meet(const RepSrc& X, const RepSrc& Y) {
  // the common prefix word of the two rays
  std::optional<ZVec> prev;
  for (long k = 2; k <= (1L << 16); k *= 4) {
    Word rx = X.rep(k), ry = Y.rep(k);
    ZVec c = c_len(rx, ry);
    bool x_full = c == rx.length(), y_full = c == ry.length();
    if (X.empirical && x_full) fail(ErrKind::Precision, "empirical end below resolution");
    if (Y.empirical && y_full) fail(ErrKind::Precision, "empirical end below resolution");
    if (((!x_full || !X.grows) && (!y_full || !Y.grows)) || (prev && *prev == c))
      return split(rx, c).first;
    prev = c;
  }
  fail(ErrKind::Range, "rays do not diverge (equal boundary points?)");
}

}  // namespace

ZVec gromov(const TreePoint& x, const TreePoint& y, const Word& base) {
  if (x.kind == TreePoint::Kind::End && y.kind == TreePoint::Kind::End &&
      x.end.kind == BoundaryPoint::Kind::Symbolic && y.end.kind == BoundaryPoint::Kind::Symbolic &&
      same_end(x.end, y.end))
    fail(ErrKind::Range, "the product of a boundary point with itself is infinite");
  return stable_product(rep_of(x), rep_of(y), base);
}

static bool flat(const ZVec& v) {
  for (int i = 1; i < v.dim(); ++i)
    if (v[i] != 0) return false;
  return true;
}

double d_ultra(const TreePoint& x, const TreePoint& y, const Word& base) {
  if (x.kind == TreePoint::Kind::Vertex && y.kind == TreePoint::Kind::Vertex &&
      x.vertex == y.vertex)
    return 0.0;
  if (x.kind == TreePoint::Kind::End && y.kind == TreePoint::Kind::End &&
      x.end.kind == BoundaryPoint::Kind::Symbolic && y.end.kind == BoundaryPoint::Kind::Symbolic &&
      same_end(x.end, y.end))
    return 0.0;
  if (base.dim() > 1) {
    // only defined inside one Z-subtree: every leg must be flat
    auto leg_ok = [&](const TreePoint& t) {
      if (t.kind == TreePoint::Kind::Vertex)
        return flat(t.vertex.length() - base.length());
      if (t.end.kind == BoundaryPoint::Kind::Symbolic)
        return flat(t.end.tail.length()) && flat(t.end.base.length() - base.length());
      return flat(t.end.chain.back().length() - base.length());
    };
    if (!leg_ok(x) || !leg_ok(y)) fail(ErrKind::Range, "points straddle distinct Z-subtrees");
  }
  ZVec g = gromov(x, y, base);
  return std::exp(-static_cast<double>(g.first()));
}

// --- class anchors ----------------------------------------------------------------

Word class_anchor_at(const Word& w, const Int& h) {
  int dim = w.dim();
  if (dim < 2) fail(ErrKind::Dimension, "classes need dimension at least 2");
  if (h == 0) return Word::epsilon(dim);
  if (h < 0 || h > w.length().height()) fail(ErrKind::Range, "row outside the word");
  ZVec before = ZVec::zero(dim);
  for (const Block& b : w.blocks()) {
    Int h0 = before.height(), h1 = h0 + b.ext.height();
    if (h > h0 && h <= h1) {
      WordBuilder out(dim);
      for (const Block& c : w.blocks()) {
        if (&c == &b) break;
        out.push_block(c);
      }
      Block piece = b;  // pattern keeps phase 0 at the block start
      piece.ext = ZVec::zero(dim);
      piece.ext[dim - 1] = h - h0;
      out.push_block(piece);
      return out.take();
    }
    before += b.ext;
  }
  fail(ErrKind::Range, "row not reached");  // unreachable: heights accumulate to the total
}

// --- snapshot ----------------------------------------------------------------------

double diameter_bound(int m) { return std::ldexp(1.0, m - 1); }

TreeSnapshot TreeSnapshot::explore(const Group& G, int radius) {
  TreeSnapshot S;
  S.dim_ = G.dim();
  S.ab_ = G.alphabet();
  ClassInfo root;
  root.anchor = Word::epsilon(G.dim());
  root.level = 0;
  root.index = 0;
  root.scale = 1.0;
  root.parent = Word::epsilon(G.dim());
  S.by_anchor_.emplace(root.anchor, root);
  if (G.dim() >= 2) {
    Ball ball = ball_enumerate(G, radius);
    for (const auto& e : ball.elems) {
      long top = static_cast<long>(e.word.length().height());
      for (long h = 1; h <= top; ++h) {
        Word anchor = class_anchor_at(e.word, h);
        ClassInfo info;
        info.anchor = anchor;
        info.level = h;
        info.parent = class_anchor_at(anchor, h - 1);
        S.by_anchor_.emplace(std::move(anchor), std::move(info));
      }
    }
  }
  // breadth-first indices: per level, 1-based, anchors in canonical order
  std::vector<long> counts;
  for (auto& [anchor, info] : S.by_anchor_) {
    if (static_cast<size_t>(info.level) >= counts.size()) counts.resize(info.level + 1, 0);
    ++counts[info.level];
    if (info.level > 0) {
      info.index = counts[info.level];
      info.scale = std::ldexp(1.0, static_cast<int>(-(info.level + info.index)));
    }
  }
  S.level_counts_ = std::move(counts);
  S.max_level_ = static_cast<long>(S.level_counts_.empty() ? 0 : S.level_counts_.size() - 1);
  for (auto& [anchor, info] : S.by_anchor_) S.ordered_.push_back(info);
  std::sort(S.ordered_.begin(), S.ordered_.end(), [](const ClassInfo& a, const ClassInfo& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.index < b.index;
  });
  return S;
}

const ClassInfo* TreeSnapshot::find(const Word& anchor) const {
  auto it = by_anchor_.find(anchor);
  return it == by_anchor_.end() ? nullptr : &it->second;
}

long TreeSnapshot::level_count(long level) const {
  if (level < 0 || static_cast<size_t>(level) >= level_counts_.size()) return 0;
  return level_counts_[static_cast<size_t>(level)];
}

double TreeSnapshot::virtual_scale(long level) const {
  return std::ldexp(1.0, static_cast<int>(-(level + level_count(level) + 1)));
}

// --- the rescaled metric -------------------------------------------------------------

namespace {

// a point of one Z-subtree: a vertex, a row ray of a carrier word, or the
// terminal ray of a flat-tailed symbolic end
struct ClassPoint {
  enum class K { Vtx, RowRay, SymTail } k = K::Vtx;
  Word w;
  long row = 0;
  int dir = 0;
  const BoundaryPoint* sym = nullptr;
};

RepSrc rep_of(const ClassPoint& p, int dim) {
  switch (p.k) {
    case ClassPoint::K::Vtx:
      return {[&p](long) { return p.w; }, false, false};
    case ClassPoint::K::RowRay:
      return {[&p, dim](long k) {
                ZVec pos = ZVec::zero(dim);
                // the top row of the carrier is only half-infinite
                if (p.row == p.w.length().height() && p.w.length().first() < 0)
                  pos[0] = p.w.length().first();
                pos[0] += p.dir * k;
                pos[dim - 1] = p.row;
                return split(p.w, pos).first;
              },
              true, false};
    case ClassPoint::K::SymTail:
    default:
      if (p.sym->kind == BoundaryPoint::Kind::Empirical)
        return {[&p](long) { return p.sym->chain.back(); }, false, true};
      return {[&p](long k) { return ray_expand(*p.sym, k); }, true, false};
  }
}

// first coordinate of the product inside one class
double class_term(const ClassPoint& a, const ClassPoint& b, const Word& anchor, int dim) {
  ZVec g = stable_product(rep_of(a, dim), rep_of(b, dim), anchor);
  if (!flat(g)) fail(ErrKind::Range, "class term is not flat");
  return std::exp(-static_cast<double>(g.first()));
}

struct Side {
  ClassPoint endpoint;   // meaningful when !infinite
  Word carrier;          // rows along the descent
  const BoundaryPoint* end = nullptr;  // non-null when the input was an end
  bool infinite = false;
  long top = 0;          // height of the endpoint's class (finite case)
  double err = 0;
};

RepSrc side_rep(const Side& s, int dim) {
  if (s.infinite) {
    const BoundaryPoint* e = s.end;
    return {[e](long k) { return ray_expand(*e, k); }, true, false};
  }
  return rep_of(s.endpoint, dim);
}

Side make_side(const TreePoint& t, const TreeSnapshot& S) {
  Side s;
  if (t.kind == TreePoint::Kind::Vertex) {
    s.endpoint = {ClassPoint::K::Vtx, t.vertex, 0, 0, nullptr};
    s.carrier = t.vertex;
    s.top = static_cast<long>(t.vertex.length().height());
    return s;
  }
  const BoundaryPoint& e = t.end;
  s.end = &e;
  if (e.kind == BoundaryPoint::Kind::Empirical) {
    const Word& deep = e.chain.back();
    s.endpoint = {ClassPoint::K::Vtx, deep, 0, 0, nullptr};
    s.carrier = deep;
    s.top = static_cast<long>(deep.length().height());
    s.err = diameter_bound(deep.dim() - 1) *
            std::ldexp(1.0, 1 - static_cast<int>(s.top));
    return s;
  }
  if (e.tail.length().height() > 0) {
    s.infinite = true;
    Word w = e.base;
    while (w.length().height() <= S.max_level() + 1) w = concat(w, e.tail);
    s.carrier = std::move(w);
    return s;
  }
  // flat tail: the end lives in the class of its base's top row
  s.endpoint = {ClassPoint::K::SymTail, {}, 0, 0, &e};
  s.carrier = ray_expand(e, 2);
  s.top = static_cast<long>(s.carrier.length().height());
  return s;
}

}  // namespace

MetricValue dbar(const TreeSnapshot& S, const TreePoint& x, const TreePoint& y) {
  const int dim = S.dim();
  MetricValue out;
  if (dim == 1) {
    out.value = d_ultra(x, y, Word::epsilon(1));
    return out;
  }
  if (dim > 2)
    fail(ErrKind::Config, "the explored-class metric is implemented for dimension 2");

  if (x.kind == TreePoint::Kind::Vertex && y.kind == TreePoint::Kind::Vertex &&
      x.vertex == y.vertex)
    return out;
  if (x.kind == TreePoint::Kind::End && y.kind == TreePoint::Kind::End &&
      x.end.kind == BoundaryPoint::Kind::Symbolic &&
      y.end.kind == BoundaryPoint::Kind::Symbolic && same_end(x.end, y.end))
    return out;

  Side sx = make_side(x, S), sy = make_side(y, S);
  out.error = sx.err + sy.err;

  Word meet = stable_meet(side_rep(sx, dim), side_rep(sy, dim));
  long hc = static_cast<long>(meet.length().height());

  auto scale_of = [&](const Word& anchor, long level, bool witnessed,
                      long& index_out) -> double {
    if (const ClassInfo* info = S.find(anchor)) {
      index_out = info->index;
      return info->scale;
    }
    if (witnessed) {
      index_out = 0;
      return S.virtual_scale(level);
    }
    fail(ErrKind::Unexplored,
         "class '" + print_word(anchor, S.alphabet()) + "' (level " + std::to_string(level) +
             ") is outside the explored snapshot");
  };

  // one side's classes strictly above the meeting row
  auto ascend = [&](Side& s) {
    bool witnessed = s.end != nullptr;
    long upper = s.infinite ? std::min(S.max_level(), static_cast<long>(
                                                          s.carrier.length().height()) - 1)
                            : s.top;
    for (long h = hc + 1; h <= upper; ++h) {
      Word anchor = class_anchor_at(s.carrier, h);
      long idx = 0;
      double scale = scale_of(anchor, h, witnessed, idx);
      ClassPoint in{ClassPoint::K::RowRay, s.carrier, h, -1, nullptr};
      ClassPoint outp = (!s.infinite && h == s.top)
                            ? s.endpoint
                            : ClassPoint{ClassPoint::K::RowRay, s.carrier, h, +1, nullptr};
      double term = scale * class_term(in, outp, anchor, dim);
      out.trace.push_back({anchor, h, idx, scale, term});
      out.value += term;
    }
    if (s.infinite) {
      // every class the tail crosses above the snapshot contributes its full
      // scale: the anchors sit on the crossing line. Geometric remainder.
      long from = std::max(hc, S.max_level()) + 1;
      double tail = std::ldexp(1.0, static_cast<int>(-from));  // sum of 2^-(h+1), h >= from
      out.tail += tail;
      out.value += tail;
    }
  };

  ascend(sx);
  ascend(sy);

  // the turning class
  Word anchor0 = class_anchor_at(meet, meet.length().height());
  long idx0 = 0;
  bool witnessed0 = sx.end != nullptr && sy.end != nullptr;
  double scale0 = scale_of(anchor0, hc, witnessed0, idx0);
  ClassPoint inx = (!sx.infinite && sx.top == hc)
                       ? sx.endpoint
                       : ClassPoint{ClassPoint::K::RowRay, sx.carrier, hc, +1, nullptr};
  ClassPoint iny = (!sy.infinite && sy.top == hc)
                       ? sy.endpoint
                       : ClassPoint{ClassPoint::K::RowRay, sy.carrier, hc, +1, nullptr};
  double term0 = scale0 * class_term(inx, iny, anchor0, dim);
  out.trace.push_back({anchor0, hc, idx0, scale0, term0});
  out.value += term0;
  return out;
}

// --- geodesic lines between ends ----------------------------------------------------

LineBetween line_between(const BoundaryPoint& a, const BoundaryPoint& b) {
  if (a.kind == BoundaryPoint::Kind::Symbolic && b.kind == BoundaryPoint::Kind::Symbolic &&
      same_end(a, b))
    fail(ErrKind::Range, "no line between identical ends");
  TreePoint ta = TreePoint::of(a), tb = TreePoint::of(b);
  Word meet = stable_meet(rep_of(ta), rep_of(tb));
  return {a, b, std::move(meet)};
}

static bool on_ray(const BoundaryPoint& e, const Word& v) {
  // v is a point of [base, end) iff it is a prefix of a strictly deeper ray prefix
  ZVec floor = v.length().succ();
  if (e.kind == BoundaryPoint::Kind::Empirical) {
    const Word& deep = e.chain.back();
    ZVec c = c_len(v, deep);
    if (c == v.length()) return true;   // v a prefix of the explored chain
    if (c < deep.length()) return false;  // diverges within resolution
    fail(ErrKind::Precision, "empirical end below the resolution of this membership query");
  }
  Word r = ray_prefix(e, floor);
  return c_len(v, r) == v.length();
}

bool line_contains(const LineBetween& line, const Vertex& v) {
  if (!(v.prefix.length() >= line.meet.length())) return false;
  return on_ray(line.a, v.prefix) || on_ray(line.b, v.prefix);
}

// --- balls in the compactified Z-tree ------------------------------------------------

CompactBall ball_in_compactification(const TreePoint& x, double delta) {
  if (delta <= 0) fail(ErrKind::Range, "radius must be positive");
  int dim = x.kind == TreePoint::Kind::Vertex ? x.vertex.dim()
                                              : (x.end.kind == BoundaryPoint::Kind::Symbolic
                                                     ? x.end.tail.dim()
                                                     : x.end.chain.back().dim());
  if (dim != 1) fail(ErrKind::Dimension, "compactification balls are a Z-tree construction");
  double t = -std::log(delta);
  if (t <= 0) return {CompactBall::Kind::Whole, Word::epsilon(1)};
  long L = static_cast<long>(std::ceil(t));
  ZVec cut = ZVec::row(1, L);
  if (x.kind == TreePoint::Kind::Vertex) {
    if (x.vertex.length() >= cut)
      return {CompactBall::Kind::Cone, split(x.vertex, cut).first};
    return {CompactBall::Kind::Singleton, x.vertex};
  }
  Word r = ray_prefix(x.end, cut);
  return {CompactBall::Kind::Cone, split(r, cut).first};
}

// --- cone translation ----------------------------------------------------------------

ConeExpr translate_cone(const Word& g, const Word& apex) {
  if (apex.empty()) return {false, apex};  // the whole boundary is invariant
  Word w = mult(g, apex);
  Word c = com(g, w);
  if (c == w && !(w == g)) {
    // the base vertex lies past w seen from g.eps: the translate is the
    // complement of the cone at w's next vertex towards g.eps
    Word u = split(g, w.length().succ()).first;
    return {true, std::move(u)};
  }
  return {false, std::move(w)};
}

}  // namespace znt
