#include "znt/group.hpp"

#include <algorithm>

namespace znt {

Group::Group(int dim, Alphabet alphabet, std::vector<std::pair<std::string, Word>> generators)
    : dim_(dim), alphabet_(std::move(alphabet)), gens_(std::move(generators)) {
  if (dim_ < 1) fail(ErrKind::Config, "dimension must be at least 1");
  for (auto& [name, w] : gens_) {
    if (w.empty()) fail(ErrKind::Config, "generator '" + name + "' is the identity");
    if (w.dim() != dim_) fail(ErrKind::Config, "generator '" + name + "' has the wrong dimension");
    try {
      (void)cyclic_decomposition(w);
    } catch (const Error& e) {
      fail(ErrKind::Config, "generator '" + name + "' is not a CDR word: " + e.what());
    }
  }
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i].first == gens_[j].first)
        fail(ErrKind::Config, "duplicate generator name '" + gens_[i].first + "'");
}

std::optional<size_t> Group::find_generator(const std::string& name) const {
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].first == name) return i;
  return std::nullopt;
}

GroupElement identity(const Group& g) { return {Word::epsilon(g.dim()), std::vector<int>{}}; }

GroupElement generator_element(const Group& g, size_t i, bool inverse) {
  Word w = inverse ? invert(g.generator(i)) : g.generator(i);
  int s = static_cast<int>(i) + 1;
  return {std::move(w), std::vector<int>{inverse ? -s : s}};
}

static Word mult_diag(const Word& a, const Word& b) {
  try {
    return mult(a, b);
  } catch (const Error& e) {
    if (e.kind() == ErrKind::NoCommonMax)
      fail(ErrKind::ProductUndefined, std::string("presentation invalid: * undefined: ") + e.what());
    throw;
  }
}

GroupElement group_mult(const GroupElement& a, const GroupElement& b) {
  GroupElement r{mult_diag(a.word, b.word), std::nullopt};
  if (a.expr && b.expr) {
    std::vector<int> e = *a.expr;
    e.insert(e.end(), b.expr->begin(), b.expr->end());
    r.expr = std::move(e);
  }
  return r;
}

GroupElement group_inv(const GroupElement& a) {
  GroupElement r{invert(a.word), std::nullopt};
  if (a.expr) {
    std::vector<int> e(a.expr->rbegin(), a.expr->rend());
    for (int& s : e) s = -s;
    r.expr = std::move(e);
  }
  return r;
}

ZVec lyndon_c(const GroupElement& x, const GroupElement& y) {
  ZVec sum = x.word.length() + y.word.length() - mult_diag(invert(x.word), y.word).length();
  for (int i = 0; i < sum.dim(); ++i) {
    if (sum[i] % 2 != 0) fail(ErrKind::Range, "length form is not integral");
    sum[i] /= 2;
  }
  ZVec byprefix = c_len(x.word, y.word);
  if (sum != byprefix) fail(ErrKind::Range, "length form disagrees with the common prefix");
  return sum;
}

Vertex base_vertex(const Group& g) { return {Word::epsilon(g.dim())}; }

Vertex vertex_of(const GroupElement& g, const ZVec& alpha) {
  return {split(g.word, alpha).first};
}

Vertex act_word(const Word& g, const Vertex& v) { return {mult_diag(g, v.prefix)}; }

Vertex act(const GroupElement& g, const Vertex& v) { return act_word(g.word, v); }

ZVec dist(const Vertex& u, const Vertex& v) {
  ZVec c = c_len(u.prefix, v.prefix);
  return u.prefix.length() + v.prefix.length() - c - c;
}

Vertex median(const Vertex& x, const Vertex& y, const Vertex& z) {
  if (x.prefix.empty()) return {com(y.prefix, z.prefix)};
  Word xi = invert(x.prefix);
  Word m = com(mult_diag(xi, y.prefix), mult_diag(xi, z.prefix));
  return {mult_diag(x.prefix, m)};
}

bool in_cone(const Vertex& x, const Vertex& v1, const Vertex& v2) {
  return median(v1, v2, x) == v2;
}

Letter edge_label(const Vertex& v) {
  if (v.prefix.empty()) fail(ErrKind::Range, "the base vertex has no label");
  return v.prefix.back();
}

Edge make_edge(const Vertex& from, const Vertex& to) {
  if (dist(from, to) != ZVec::one(from.prefix.dim()))
    fail(ErrKind::Range, "not an edge: endpoints are not at distance 1");
  return {from, to};
}

Letter edge_sigma(const Edge& e) {
  ZVec lo = e.origin.prefix.length(), lt = e.terminus.prefix.length();
  if (lt == lo.succ()) return edge_label(e.terminus);   // positive edge
  return edge_label(e.origin).inverse();                // negative edge
}

Int hbar(const Vertex& v) { return v.prefix.length().height(); }
Int hbar_pair(const Vertex& a, const Vertex& b) { return dist(a, b).height(); }
Int hbar_elem(const GroupElement& g) { return g.word.length().height(); }

// --- axis ---------------------------------------------------------------------

static Word line_prefix(const Word& u, long m) {
  // the first m letters of u o u o ... (u cyclically reduced)
  int dim = u.dim();
  Word pow = u;
  while (pow.length() < ZVec::row(dim, m)) pow = concat(pow, u);
  return split(pow, ZVec::row(dim, m)).first;
}

std::vector<Vertex> axis_segment(const Group& G, const GroupElement& g, int radius) {
  if (g.word.empty()) fail(ErrKind::Range, "the identity has no axis");
  if (radius < 0) fail(ErrKind::Range, "negative radius");
  CyclicDecomposition cd = cyclic_decomposition(g.word);
  Word cinv = invert(cd.conjugator);
  Word ucore_inv = invert(cd.core);
  std::vector<Vertex> out;
  out.reserve(static_cast<size_t>(2 * radius + 1));
  for (int m = -radius; m <= radius; ++m) {
    Word tail = m >= 0 ? line_prefix(cd.core, m) : line_prefix(ucore_inv, -m);
    Vertex p{mult_diag(cinv, tail)};
    // characteristic-set membership: [g^-1 p, p] and [p, g p] meet only in p
    Vertex left = act(group_inv(g), p), right = act(g, p);
    if (!(median(p, left, right) == p))
      fail(ErrKind::Range, "axis point failed the characteristic-set test");
    out.push_back(std::move(p));
  }
  (void)G;
  return out;
}

// --- ball ---------------------------------------------------------------------

std::vector<int> Ball::expression(size_t i) const {
  std::vector<int> e;
  while (elems[i].len > 0) {
    e.push_back(elems[i].step);
    i = elems[i].parent;
  }
  std::reverse(e.begin(), e.end());
  return e;
}

GroupElement Ball::element(size_t i) const { return {elems[i].word, expression(i)}; }

Ball ball_enumerate(const Group& G, int k) {
  if (k < 0) fail(ErrKind::Range, "negative ball radius");
  Ball ball;
  ball.elems.push_back({Word::epsilon(G.dim()), 0, 0, 0});
  ball.index.emplace(ball.elems[0].word, 0);
  std::vector<std::pair<Word, int>> steps;
  for (size_t gi = 0; gi < G.generator_count(); ++gi) {
    steps.emplace_back(G.generator(gi), static_cast<int>(gi) + 1);
    steps.emplace_back(invert(G.generator(gi)), -(static_cast<int>(gi) + 1));
  }
  size_t gen_begin = 0, gen_end = 1;
  for (int len = 1; len <= k; ++len) {
    struct Cand {
      size_t parent;
      int step;
    };
    // first occurrence wins: parents run in canonical order, steps in index order
    std::unordered_map<Word, Cand, WordHash> fresh;
    std::vector<const Word*> order;
    for (size_t p = gen_begin; p < gen_end; ++p) {
      for (const auto& [gw, step] : steps) {
        Word w = mult_diag(ball.elems[p].word, gw);
        if (ball.index.count(w)) continue;
        auto [it, inserted] = fresh.emplace(std::move(w), Cand{p, step});
        if (inserted) order.push_back(&it->first);
      }
    }
    std::sort(order.begin(), order.end(),
              [](const Word* a, const Word* b) { return canonical_less(*a, *b); });
    gen_begin = ball.elems.size();
    for (const Word* w : order) {
      const Cand& c = fresh.at(*w);
      ball.index.emplace(*w, ball.elems.size());
      ball.elems.push_back({*w, len, c.parent, c.step});
    }
    gen_end = ball.elems.size();
    if (gen_begin == gen_end) break;
  }
  return ball;
}

}  // namespace znt
