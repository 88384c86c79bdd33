#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "znt/boundary.hpp"

using namespace znt;
using namespace znt::test;

static TreePoint vtx(const std::string& s, int dim = 1) { return TreePoint::of(W(s, dim)); }

TEST_CASE("symbolic end validation") {
  CHECK_THROWS_AS(symbolic_end(W("a", 1), W("\xCE\xB5", 1)), Error);
  CHECK_THROWS_AS(symbolic_end(W("\xCE\xB5", 1), W("a b a^-1", 1)), Error);
  CHECK_THROWS_AS(symbolic_end(W("a", 1), W("a^-1 b", 1)), Error);  // junction cancels
  BoundaryPoint e = symbolic_end(W("a", 1), W("b a", 1));
  CHECK(ray_prefix(e, ZVec::row(1, 6)).length() >= ZVec::row(1, 6));
}

TEST_CASE("end classification") {
  CHECK(classify_end(symbolic_end(W("\xCE\xB5", 1), W("a", 1))).type == 1);
  BoundaryPoint t2 = symbolic_end(W("\xCE\xB5"), W("(a)^(0,1)"));
  CHECK(classify_end(t2).type == 2);
  CHECK(classify_end(t2).exact);
  BoundaryPoint t1 = symbolic_end(W("(a)^(0,5)"), W("b"));
  CHECK(classify_end(t1).type == 1);

  BoundaryPoint emp = empirical_end({W("a", 1), W("a b", 1), W("a b a", 1)}, 0);
  EndType et = classify_end(emp);
  CHECK(et.type == 1);
  CHECK_FALSE(et.exact);
}

TEST_CASE("same end") {
  BoundaryPoint p = symbolic_end(W("\xCE\xB5", 1), W("a b", 1));
  BoundaryPoint q = symbolic_end(W("a b", 1), W("a b", 1));
  BoundaryPoint r = symbolic_end(W("a b a", 1), W("b a", 1));
  BoundaryPoint s = symbolic_end(W("\xCE\xB5", 1), W("b a", 1));
  CHECK(same_end(p, q));
  CHECK(same_end(p, r));  // same ray, shifted presentation
  CHECK_FALSE(same_end(p, s));
  CHECK_FALSE(same_end(p, symbolic_end(W("\xCE\xB5", 1), W("a", 1))));
}

TEST_CASE("gromov products") {
  Word eps = Word::epsilon(1);
  CHECK(gromov(vtx("a b a"), vtx("a b b"), eps) == ZVec::row(1, 2));
  CHECK(gromov(vtx("a b a"), vtx("a b a"), eps) == ZVec::row(1, 3));
  // tripod legs 1,2,3: brute-force definition (d(x,z)+d(y,z)-d(x,y))/2
  TreePoint x = vtx("a"), y = vtx("b b"), z = vtx("a^-1 b^-1 a");
  auto d = [](const TreePoint& u, const TreePoint& v) {
    return dist(Vertex{u.vertex}, Vertex{v.vertex});
  };
  ZVec twice = d(x, z) + d(y, z) - d(x, y);
  CHECK(twice == Int(2) * gromov(x, y, z.vertex));
  // ends
  BoundaryPoint pa = symbolic_end(W("\xCE\xB5", 1), W("a", 1));
  BoundaryPoint pb = symbolic_end(W("\xCE\xB5", 1), W("b", 1));
  CHECK(gromov(TreePoint::of(pa), TreePoint::of(pb), eps) == ZVec::row(1, 0));
  CHECK(gromov(TreePoint::of(pa), vtx("a a a b"), eps) == ZVec::row(1, 3));
  CHECK_THROWS_AS(gromov(TreePoint::of(pa), TreePoint::of(pa), eps), Error);
}

TEST_CASE("ultrametric distance") {
  Word eps = Word::epsilon(1);
  CHECK(d_ultra(vtx("a b a"), vtx("a b b"), eps) == doctest::Approx(std::exp(-2.0)));
  CHECK(d_ultra(vtx("a b a"), vtx("a b a"), eps) == 0.0);
  BoundaryPoint pa = symbolic_end(W("\xCE\xB5", 1), W("a", 1));
  BoundaryPoint pb = symbolic_end(W("\xCE\xB5", 1), W("b", 1));
  CHECK(d_ultra(TreePoint::of(pa), TreePoint::of(pb), eps) == 1.0);
  CHECK(d_ultra(TreePoint::of(pa), TreePoint::of(pa), eps) == 0.0);

  // strong triangle inequality on random triples including ends
  Rng r(31, 0);
  std::vector<TreePoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(TreePoint::of(naive::to_word(random_flat(r, 1 + r.next_below(10)), 1)));
  for (int i = 0; i < 10; ++i) {
    Word tail = naive::to_word(random_flat(r, 1 + r.next_below(3)), 1);
    if (!is_cyclically_reduced(tail)) continue;
    pts.push_back(TreePoint::of(symbolic_end(Word::epsilon(1), tail)));
  }
  for (int it = 0; it < 3000; ++it) {
    const TreePoint& x = pts[r.next_below(pts.size())];
    const TreePoint& y = pts[r.next_below(pts.size())];
    const TreePoint& z = pts[r.next_below(pts.size())];
    double dxy = d_ultra(x, y, eps), dxz = d_ultra(x, z, eps), dyz = d_ultra(y, z, eps);
    CHECK(dxy <= std::max(dxz, dyz) * (1 + 1e-15) + 1e-300);
    CHECK(dxy <= 1.0);
    CHECK(dxy >= 0.0);
  }

  // cross-class inputs rejected in dimension 2
  CHECK_THROWS_AS(d_ultra(vtx("(a)^(0,1)", 2), vtx("b", 2), Word::epsilon(2)), Error);
  // intra-class use is fine
  CHECK(d_ultra(vtx("a", 2), vtx("b", 2), Word::epsilon(2)) == doctest::Approx(1.0));
}

TEST_CASE("class anchors") {
  CHECK(class_anchor_at(W("(a)^(0,5)"), 3) == W("(a)^(0,3)"));
  CHECK(class_anchor_at(W("b (a)^(-3,5)"), 5) == W("b (a)^(0,5)"));
  CHECK(class_anchor_at(W("b (a)^(7,5) b a"), 5) == W("b (a)^(0,5)"));
  CHECK(class_anchor_at(W("(a)^(0,5) b (a^-1)^(0,5)"), 7) == W("(a)^(0,5) b (a^-1)^(0,2)"));
  CHECK(class_anchor_at(W("a b a"), 0) == W("\xCE\xB5"));
  // anchors are class invariants: members at height-0 distance share them
  Rng r(17, 0);
  for (int i = 0; i < 300; ++i) {
    Word w = random_z2_word(r, 4, 6, 2);
    if (w.length().height() == 0) continue;
    Word anchor = class_anchor_at(w, w.length().height());
    // extend w inside its class and re-derive
    Word ext = w;
    for (int tries = 0; tries < 12; ++tries) {
      Letter l{static_cast<uint32_t>(r.next_below(4))};
      if (!ext.empty() && l == ext.back().inverse()) continue;
      ConcatCheck c = try_concat(ext, naive::to_word({l}, 2));
      ext = *c.word;
      break;
    }
    CHECK(class_anchor_at(ext, ext.length().height()) == anchor);
    CHECK(dist(Vertex{anchor}, Vertex{w}).height() == 0);
  }
}

TEST_CASE("snapshot exploration") {
  Group H = height_group2();
  TreeSnapshot S1 = TreeSnapshot::explore(H, 1);
  CHECK(S1.max_level() == 5);
  CHECK(S1.level_count(0) == 1);
  for (long l = 1; l <= 5; ++l) CHECK(S1.level_count(l) == 2);
  const ClassInfo* up = S1.find(W("(a)^(0,1)"));
  REQUIRE(up != nullptr);
  CHECK(up->index == 1);
  CHECK(up->scale == doctest::Approx(0.25));
  const ClassInfo* down = S1.find(W("(a^-1)^(0,1)"));
  REQUIRE(down != nullptr);
  CHECK(down->index == 2);
  CHECK(S1.find(W("b (a)^(0,1)")) == nullptr);

  TreeSnapshot S2 = TreeSnapshot::explore(H, 2);
  CHECK(S2.max_level() == 10);
  CHECK(S2.find(W("b (a)^(0,1)")) != nullptr);
  CHECK(S2.find(W("b (a)^(0,1)"))->index == 3);  // after the two pure columns
}

TEST_CASE("dbar on the height group") {
  Group H = height_group2();
  TreeSnapshot S = TreeSnapshot::explore(H, 2);
  Word eps2 = Word::epsilon(2);

  // pinned rescaling: level-1 class with discovery index 3, inner e^-1
  MetricValue m = dbar(S, vtx("b (a)^(1,1)", 2), vtx("b (a)^(2,1)", 2));
  CHECK(m.value == doctest::Approx(std::exp(-1.0) / 16.0));

  // climbing the t column: 1 + sum_{h=1..5} 2^-(h+1)
  MetricValue mt = dbar(S, vtx("(a)^(0,5)", 2), TreePoint::of(eps2));
  CHECK(mt.value == doctest::Approx(1.0 + 31.0 / 64.0));
  CHECK(dbar(S, TreePoint::of(eps2), vtx("(a)^(0,5)", 2)).value == doctest::Approx(mt.value));

  MetricValue ma = dbar(S, vtx("(a)^(0,5)", 2), vtx("a", 2));
  CHECK(ma.value == doctest::Approx(31.0 / 64.0 + std::exp(-1.0)));

  CHECK(dbar(S, vtx("a b", 2), vtx("a b", 2)).value == 0.0);

  // vertex outside the snapshot
  CHECK_THROWS_AS(dbar(S, vtx("(a)^(0,20)", 2), TreePoint::of(eps2)), Error);
  try {
    dbar(S, vtx("(a)^(0,20)", 2), TreePoint::of(eps2));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Unexplored);
  }
}

TEST_CASE("dbar converges along a symbolic ray") {
  Group H = height_group2();
  TreeSnapshot S = TreeSnapshot::explore(H, 2);
  BoundaryPoint E = symbolic_end(Word::epsilon(2), W("(a)^(0,1)"));
  double prev = 2.0;
  for (long i = 1; i <= 8; ++i) {
    ZVec len = ZVec::zero(2);
    len[1] = i;
    Word xi = W("(a)^(0," + std::to_string(i) + ")");
    double v = dbar(S, TreePoint::of(xi), TreePoint::of(E)).value;
    CHECK(v == doctest::Approx(std::ldexp(1.0, static_cast<int>(-i))));
    CHECK(v < prev);
    prev = v;
  }
  // two distinct type-2 ends still meet the diameter bound
  BoundaryPoint E2 = symbolic_end(W("b", 2), W("(a)^(0,1)"));
  double v = dbar(S, TreePoint::of(E), TreePoint::of(E2)).value;
  CHECK(v <= 2.0);
  CHECK(v > 0.0);
}

TEST_CASE("dbar metric axioms on sampled explored triples") {
  Group H = height_group2();
  TreeSnapshot S = TreeSnapshot::explore(H, 2);
  Ball ball = ball_enumerate(H, 2);
  Rng r(55, 0);
  std::vector<Word> verts;
  for (int i = 0; i < 60; ++i) {
    const Word& w = ball.elems[r.next_below(ball.elems.size())].word;
    if (w.empty()) {
      verts.push_back(w);
      continue;
    }
    verts.push_back(split(w, random_position(r, w)).first);
  }
  for (int it = 0; it < 400; ++it) {
    const Word& x = verts[r.next_below(verts.size())];
    const Word& y = verts[r.next_below(verts.size())];
    const Word& z = verts[r.next_below(verts.size())];
    double dxy = dbar(S, TreePoint::of(x), TreePoint::of(y)).value;
    double dyx = dbar(S, TreePoint::of(y), TreePoint::of(x)).value;
    double dxz = dbar(S, TreePoint::of(x), TreePoint::of(z)).value;
    double dzy = dbar(S, TreePoint::of(z), TreePoint::of(y)).value;
    CHECK(dxy == doctest::Approx(dyx).epsilon(1e-12));
    CHECK(dxy <= (dxz + dzy) * (1 + 1e-12));
    CHECK(dxy <= 2.0);
    if (!(x == y)) CHECK(dxy > 0.0);
  }
}

TEST_CASE("hbar convergence forces dbar to zero") {
  Group H = height_group2();
  TreeSnapshot S = TreeSnapshot::explore(H, 3);
  GroupElement t = generator_element(H, 2, false);
  GroupElement b = generator_element(H, 1, false);
  GroupElement acc = identity(H);
  double prev = 3.0;
  for (int i = 1; i <= 3; ++i) {
    acc = group_mult(acc, t);
    Vertex ai = act(acc, base_vertex(H));
    Vertex bi = act(group_mult(acc, b), base_vertex(H));
    Vertex m = median(base_vertex(H), ai, bi);
    CHECK(hbar(m) == 5 * i);
    double v = dbar(S, TreePoint::of(ai), TreePoint::of(bi)).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev <= std::ldexp(1.0, -14));  // well below the level-15 scale budget
}

TEST_CASE("lines between ends") {
  BoundaryPoint fwd = symbolic_end(W("\xCE\xB5", 1), W("a", 1));
  BoundaryPoint back = symbolic_end(W("\xCE\xB5", 1), W("a^-1", 1));
  LineBetween line = line_between(fwd, back);
  CHECK(line.meet.empty());
  CHECK(line_contains(line, Vertex{W("a a a", 1)}));
  CHECK(line_contains(line, Vertex{W("a^-3", 1)}));
  CHECK(line_contains(line, Vertex{W("\xCE\xB5", 1)}));
  CHECK_FALSE(line_contains(line, Vertex{W("a b", 1)}));
  CHECK_THROWS_AS(line_between(fwd, fwd), Error);

  // sampled symbolic pairs: membership matches the median characterisation
  Rng r(41, 0);
  for (int it = 0; it < 200; ++it) {
    Word ta = naive::to_word(random_flat(r, 1 + r.next_below(3)), 1);
    Word tb = naive::to_word(random_flat(r, 1 + r.next_below(3)), 1);
    if (!is_cyclically_reduced(ta) || !is_cyclically_reduced(tb)) continue;
    BoundaryPoint pa = symbolic_end(Word::epsilon(1), ta);
    BoundaryPoint pb = symbolic_end(Word::epsilon(1), tb);
    if (same_end(pa, pb)) continue;
    LineBetween l = line_between(pa, pb);
    Word probe = naive::to_word(random_flat(r, r.next_below(8)), 1);
    // brute force: v on (a,b) iff it lies on [deep_a, deep_b] for deep prefixes
    Word da = ray_prefix(pa, probe.length() + ZVec::row(1, 8));
    Word db = ray_prefix(pb, probe.length() + ZVec::row(1, 8));
    Vertex v{probe};
    bool expect = in_cone(Vertex{da}, v, v) ? false : false;  // placeholder, computed below
    Word c = com(da, db);
    // v in [da, db] iff median(da, v, db) == v
    Vertex mid = median(Vertex{da}, v, Vertex{db});
    expect = (mid == v) && v.prefix.length() >= c.length();
    CHECK(line_contains(l, v) == expect);
  }
}

TEST_CASE("empirical resolution errors") {
  BoundaryPoint emp = empirical_end({W("a", 1), W("a b", 1)}, 1);
  LineBetween l = line_between(emp, symbolic_end(Word::epsilon(1), W("b", 1)));
  CHECK_THROWS_AS((void)line_contains(l, Vertex{W("a b a b", 1)}), Error);
  try {
    (void)line_contains(l, Vertex{W("a b a b", 1)});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::Precision);
  }
  CHECK(line_contains(l, Vertex{W("a", 1)}));
}

TEST_CASE("balls in the compactified Z-tree") {
  BoundaryPoint pa = symbolic_end(W("\xCE\xB5", 1), W("a", 1));
  CompactBall b1 = ball_in_compactification(TreePoint::of(pa), std::exp(-2.0));
  CHECK(b1.kind == CompactBall::Kind::Cone);
  CHECK(b1.at == W("a a", 1));

  CompactBall b2 = ball_in_compactification(vtx("a"), 0.5);
  CHECK(b2.kind == CompactBall::Kind::Cone);
  CHECK(b2.at == W("a", 1));

  CompactBall b3 = ball_in_compactification(vtx("a"), 0.3);  // -ln 0.3 > 1: no prefix deep enough
  CHECK(b3.kind == CompactBall::Kind::Singleton);
  CHECK(b3.at == W("a", 1));

  CompactBall b4 = ball_in_compactification(vtx("\xCE\xB5"), 1.5);
  CHECK(b4.kind == CompactBall::Kind::Whole);
}

TEST_CASE("cone translation") {
  // identities checked by hand against the cone definition
  CHECK(translate_cone(W("a^-1", 1), W("a", 1)).complement);
  CHECK(translate_cone(W("a^-1", 1), W("a", 1)).apex == W("a^-1", 1));
  ConeExpr plain = translate_cone(W("a^-1", 1), W("a b", 1));
  CHECK_FALSE(plain.complement);
  CHECK(plain.apex == W("b", 1));
  ConeExpr push = translate_cone(W("a", 1), W("a", 1));
  CHECK_FALSE(push.complement);
  CHECK(push.apex == W("a a", 1));
  ConeExpr id = translate_cone(W("\xCE\xB5", 1), W("b", 1));
  CHECK_FALSE(id.complement);
  CHECK(id.apex == W("b", 1));
}
