#include <doctest.h>

#include "support.hpp"
#include "znt/group.hpp"

using namespace znt;
using namespace znt::test;

static Group free2() { return free_group2(); }
static Group height_group() { return height_group2(); }

static GroupElement elem(const Group& G, const std::string& text) {
  return {parse_word(text, G.alphabet(), G.dim()), std::nullopt};
}

static Vertex vx(const Group& G, const std::string& text) {
  return {parse_word(text, G.alphabet(), G.dim())};
}

TEST_CASE("group operations") {
  Group G = height_group();
  CHECK(group_mult(elem(G, "a"), elem(G, "a^-1")).word.empty());
  CHECK(group_mult(elem(G, "(a)^(0,5)"), elem(G, "b")).word == W("(a)^(0,5) b"));
  CHECK(group_inv(elem(G, "a b")).word == W("b^-1 a^-1"));
  GroupElement t = generator_element(G, 2, false);
  CHECK(t.word == W("(a)^(0,5)"));
  CHECK(group_mult(t, group_inv(t)).word.empty());
  // a and t commute: both are powers of the same row letter
  CHECK(group_mult(elem(G, "a"), t).word == group_mult(t, elem(G, "a")).word);
}

TEST_CASE("group construction rejects bad presentations") {
  Alphabet ab({"a", "b"});
  CHECK_THROWS_AS(Group(2, ab, {{"e", parse_word("\xCE\xB5", ab, 2)}}), Error);
  CHECK_THROWS_AS(Group(2, ab,
                        {{"x", parse_word("a", ab, 2)}, {"x", parse_word("b", ab, 2)}}),
                  Error);
}

TEST_CASE("lyndon c") {
  Group G = free2();
  CHECK(lyndon_c(elem(G, "a b"), elem(G, "a b")) == ZVec::row(1, 2));
  CHECK(lyndon_c(elem(G, "a"), elem(G, "b")) == ZVec::row(1, 0));
  CHECK(lyndon_c(elem(G, "a b a"), elem(G, "a b b")) == ZVec::row(1, 2));
}

TEST_CASE("vertices and the action") {
  Group G = height_group();
  CHECK(vertex_of(elem(G, "a b a"), ZVec::row(2, 2)) == vx(G, "a b"));
  CHECK(vertex_of(elem(G, "a b a"), ZVec::zero(2)) == base_vertex(G));
  ZVec a03 = ZVec::zero(2);
  a03[1] = 3;
  CHECK(vertex_of(elem(G, "(a)^(0,5)"), a03) == vx(G, "(a)^(0,3)"));

  CHECK(act(elem(G, "a"), base_vertex(G)) == vx(G, "a"));
  CHECK(act(elem(G, "a^-1"), vx(G, "a")) == base_vertex(G));
  CHECK(act(elem(G, "b"), vx(G, "(a)^(0,1)")) == vx(G, "b (a)^(0,1)"));
}

TEST_CASE("distance and median") {
  Group G = free2();
  CHECK(dist(base_vertex(G), {parse_word("a b a", G.alphabet(), 1)}) == ZVec::row(1, 3));
  Vertex u{parse_word("a b a", G.alphabet(), 1)}, v{parse_word("a b b", G.alphabet(), 1)};
  CHECK(dist(u, v) == ZVec::row(1, 2));
  CHECK(dist(v, v) == ZVec::zero(1));
  CHECK(median(base_vertex(G), u, v) == Vertex{parse_word("a b", G.alphabet(), 1)});
  CHECK(median(u, u, v) == u);

  Group H = height_group();
  CHECK(median(base_vertex(H), vx(H, "(a)^(0,5)"), vx(H, "(a)^(0,1) b")) == vx(H, "(a)^(0,1)"));
}

TEST_CASE("cones") {
  Group G = height_group();
  CHECK(in_cone(vx(G, "a b a"), base_vertex(G), vx(G, "a b")));
  CHECK_FALSE(in_cone(vx(G, "b"), base_vertex(G), vx(G, "a")));
  CHECK(in_cone(vx(G, "(a)^(0,5)"), base_vertex(G), vx(G, "(a)^(2,1)")));
}

TEST_CASE("edge labels") {
  Group G = free2();
  Vertex ab{parse_word("a b", G.alphabet(), 1)}, a{parse_word("a", G.alphabet(), 1)};
  CHECK(edge_label(ab) == Letter::make(1, false));
  CHECK(edge_sigma(make_edge(ab, a)) == Letter::make(1, true));
  CHECK(edge_sigma(make_edge(a, ab)) == Letter::make(1, false));
  CHECK_THROWS_AS(edge_label(base_vertex(G)), Error);
  CHECK_THROWS_AS(make_edge(ab, base_vertex(G)), Error);
}

TEST_CASE("hbar") {
  Group G = height_group();
  CHECK(hbar(vx(G, "(a)^(0,5)")) == 5);
  CHECK(hbar(vx(G, "a b a")) == 0);
  CHECK(hbar_elem(elem(G, "(a)^(0,5) b (a^-1)^(0,5)")) == 10);
}

TEST_CASE("axis segments") {
  Group G = free2();
  auto pts = axis_segment(G, elem(G, "a"), 2);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0] == Vertex{parse_word("a^-2", G.alphabet(), 1)});
  CHECK(pts[2] == base_vertex(G));
  CHECK(pts[4] == Vertex{parse_word("a^2", G.alphabet(), 1)});

  auto conj = axis_segment(G, elem(G, "b^-1 a b"), 1);
  REQUIRE(conj.size() == 3);
  CHECK(conj[1] == Vertex{parse_word("b^-1", G.alphabet(), 1)});

  CHECK_THROWS_AS(axis_segment(G, identity(G), 1), Error);

  // tall generator: the axis climbs rows
  Group H = height_group();
  auto tall = axis_segment(H, elem(H, "(a)^(0,5)"), 3);
  CHECK(tall.size() == 7);
}

TEST_CASE("ball enumeration") {
  Group F = free2();
  CHECK(ball_enumerate(F, 1).elems.size() == 5);
  Ball b3 = ball_enumerate(F, 3);
  CHECK(b3.elems.size() == 53);  // 1 + 4 + 12 + 36, spheres 4*3^(l-1)
  // expressions multiply back to the element
  for (size_t i = 0; i < b3.elems.size(); ++i) {
    GroupElement g = identity(F);
    for (int s : b3.expression(i))
      g = group_mult(g, generator_element(F, static_cast<size_t>(std::abs(s)) - 1, s < 0));
    CHECK(g.word == b3.elems[i].word);
    CHECK(static_cast<int>(b3.expression(i).size()) == b3.elems[i].len);
  }

  Group H = height_group();
  CHECK(ball_enumerate(H, 1).elems.size() == 7);  // identity, a+-, b+-, t+-
  // a and t commute, so the radius-2 sphere loses both commutators
  Ball h2 = ball_enumerate(H, 2);
  size_t sphere2 = 0;
  for (auto& e : h2.elems) sphere2 += e.len == 2;
  CHECK(sphere2 == 26);  // 30 non-cancelling pairs, minus 4 commutation collapses (a t = t a etc.)
}

TEST_CASE("lyndon axioms on sampled triples") {
  Group H = height_group();
  Ball ball = ball_enumerate(H, 3);
  Rng r(77, 0);
  ZVec zero = ZVec::zero(2);
  for (int it = 0; it < 2000; ++it) {
    GroupElement x = ball.element(r.next_below(ball.elems.size()));
    GroupElement y = ball.element(r.next_below(ball.elems.size()));
    GroupElement z = ball.element(r.next_below(ball.elems.size()));
    // (L1), (L2)
    CHECK(x.word.length() >= zero);
    CHECK(x.word.length() == invert(x.word).length());
    // (L3): c(x,y) > c(x,z) -> c(x,z) = c(y,z); (L4) values land in the lattice
    ZVec cxy = lyndon_c(x, y), cxz = lyndon_c(x, z), cyz = lyndon_c(y, z);
    if (cxy > cxz) CHECK(cxz == cyz);
    // l(xy) <= l(x) + l(y), 0 <= c <= min
    CHECK(group_mult(x, y).word.length() <= x.word.length() + y.word.length());
    CHECK(cxy >= zero);
    CHECK(cxy <= std::min(x.word.length(), y.word.length(),
                          [](const ZVec& p, const ZVec& q) { return p < q; }));
  }
  CHECK(identity(H).word.length() == zero);
}

TEST_CASE("action axioms and equivariance") {
  Group H = height_group();
  Ball ball = ball_enumerate(H, 2);
  Rng r(88, 0);
  for (int it = 0; it < 1500; ++it) {
    GroupElement g = ball.element(r.next_below(ball.elems.size()));
    GroupElement h = ball.element(r.next_below(ball.elems.size()));
    GroupElement w = ball.element(r.next_below(ball.elems.size()));
    Vertex v = w.word.empty() ? base_vertex(H) : vertex_of(w, random_position(r, w.word));

    CHECK(act(identity(H), v) == v);
    CHECK(act(g, act(h, v)) == act(group_mult(g, h), v));

    Vertex u = vertex_of(h, h.word.empty() ? ZVec::zero(2) : h.word.length());
    CHECK(dist(act(g, u), act(g, v)) == dist(u, v));

    // sigma is constant on G-orbits of edges
    if (!v.prefix.empty()) {
      Vertex parent{split(v.prefix, v.prefix.length().pred()).first};
      Edge e = make_edge(parent, v);
      Edge ge = make_edge(act(g, parent), act(g, v));
      CHECK(edge_sigma(ge) == edge_sigma(e));
      CHECK(edge_sigma(make_edge(v, parent)) == edge_sigma(e).inverse());
    }

    // hbar is a seminorm
    CHECK(hbar_elem(group_inv(g)) == hbar_elem(g));
    CHECK(hbar_elem(group_mult(g, h)) <= hbar_elem(g) + hbar_elem(h));
  }
  CHECK(hbar_elem(identity(H)) == 0);
}

TEST_CASE("hbar additivity along geodesics") {
  Group H = height_group();
  Ball ball = ball_enumerate(H, 2);
  Rng r(99, 0);
  for (int it = 0; it < 1000; ++it) {
    GroupElement x = ball.element(r.next_below(ball.elems.size()));
    GroupElement y = ball.element(r.next_below(ball.elems.size()));
    Vertex a{x.word}, b{y.word};
    // p on [a, b]: walk through the median side
    Word c = com(a.prefix, b.prefix);
    Vertex p{c};
    if (!(a == b)) CHECK(hbar_pair(a, b) == hbar_pair(a, p) + hbar_pair(p, b));
    // any prefix of a past the median is on [a, b] as well
    ZVec alpha = c.length() + split(a.prefix, c.length()).second.length();
    Vertex q{split(a.prefix, alpha).first};
    CHECK(hbar_pair(a, b) == hbar_pair(a, q) + hbar_pair(q, b));
  }
}

TEST_CASE("path labels from the base vertex read back the element") {
  Group F = free2();
  Ball ball = ball_enumerate(F, 4);
  for (size_t i = 0; i < ball.elems.size(); ++i) {
    const Word& g = ball.elems[i].word;
    // step along [epsilon, g.eps] reading sigma; the label word is g itself
    std::vector<Letter> read;
    for (ZVec alpha = ZVec::one(1); alpha <= g.length(); alpha = alpha.succ()) {
      Vertex to{split(g, alpha).first};
      Vertex from{split(g, alpha.pred()).first};
      read.push_back(edge_sigma(make_edge(from, to)));
    }
    CHECK(is_reduced(read));
    CHECK(naive::to_word(read, 1) == g);
  }
}
