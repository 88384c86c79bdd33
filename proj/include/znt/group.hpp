#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "znt/parse.hpp"
#include "znt/word.hpp"

namespace znt {

// A finitely generated group presented by reduced CDR words, acting on its
// universal tree. The library trusts the presentation; a failing * product
// surfaces as a presentation-invalid diagnostic rather than an attempt to
// decide freeness.
class Group {
 public:
  Group(int dim, Alphabet alphabet, std::vector<std::pair<std::string, Word>> generators);

  int dim() const { return dim_; }
  const Alphabet& alphabet() const { return alphabet_; }
  size_t generator_count() const { return gens_.size(); }
  const Word& generator(size_t i) const { return gens_.at(i).second; }
  const std::string& generator_name(size_t i) const { return gens_.at(i).first; }
  std::optional<size_t> find_generator(const std::string& name) const;

 private:
  int dim_;
  Alphabet alphabet_;
  std::vector<std::pair<std::string, Word>> gens_;
};

struct GroupElement {
  Word word;
  // signed 1-based generator indices witnessing the element, when tracked
  std::optional<std::vector<int>> expr;
};

struct Vertex {
  Word prefix;

  friend bool operator==(const Vertex& a, const Vertex& b) { return a.prefix == b.prefix; }
  friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
};

struct Edge {
  Vertex origin, terminus;  // d(origin, terminus) = 1
};

GroupElement identity(const Group& g);
GroupElement generator_element(const Group& g, size_t i, bool inverse);
GroupElement group_mult(const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupElement& a);

// c(x,y) = (l(x)+l(y)-l(x^-1 y))/2, cross-checked against the common prefix.
ZVec lyndon_c(const GroupElement& x, const GroupElement& y);

Vertex base_vertex(const Group& g);
Vertex vertex_of(const GroupElement& g, const ZVec& alpha);
Vertex act(const GroupElement& g, const Vertex& v);
Vertex act_word(const Word& g, const Vertex& v);
ZVec dist(const Vertex& u, const Vertex& v);
// Y of the tree axioms: the unique point on all three pairwise geodesics.
Vertex median(const Vertex& x, const Vertex& y, const Vertex& z);
bool in_cone(const Vertex& x, const Vertex& v1, const Vertex& v2);

Letter edge_label(const Vertex& v);       // xi; the base vertex has no label
Letter edge_sigma(const Edge& e);         // sigma, oriented
Edge make_edge(const Vertex& from, const Vertex& to);

Int hbar(const Vertex& v);
Int hbar_pair(const Vertex& a, const Vertex& b);
Int hbar_elem(const GroupElement& g);

// Vertices of Axis(g) within `radius` successor steps of its crossing point,
// ordered along the line; every returned point passes the characteristic-set
// membership test.
std::vector<Vertex> axis_segment(const Group& G, const GroupElement& g, int radius);

// Breadth-first ball of radius k in the Cayley graph, deduplicated by
// canonical word. Elements are grouped by word length, each generation sorted
// canonically; expressions are one shortest witness with ties broken by
// parent order then generator index.
struct Ball {
  struct Entry {
    Word word;
    int len;          // word length in the generating set
    size_t parent;    // index of the predecessor entry (self for the identity)
    int step;         // signed 1-based generator index applied to the parent
  };
  std::vector<Entry> elems;
  std::unordered_map<Word, size_t, WordHash> index;

  std::vector<int> expression(size_t i) const;
  GroupElement element(size_t i) const;
};
Ball ball_enumerate(const Group& G, int k);

}  // namespace znt
