#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "znt/alphabet.hpp"
#include "znt/lattice.hpp"

namespace znt {

// Canonical block form of a reduced Z^n-word. A word is a finite sequence of
// blocks whose extents sum to the length; the induced letter function on
// [1, length] is reduced and the block sequence is maximally merged.
//
// A finite block stores its letters; extent (k,0,...,0) is implicit. A
// periodic block stores a primitive, cyclically reduced period at phase 0:
// the letter at relative position beta is period[(beta_1 - 1) mod p], a
// function of the first coordinate only. Its extent has some nonzero
// coordinate beyond the first (flat runs are always finite blocks).
struct Block {
  bool periodic = false;
  std::vector<Letter> pat;
  ZVec ext;

  Letter front() const;
  Letter back() const;
  Letter at(const ZVec& rel) const;  // rel in [1, ext]
};

class Word {
 public:
  Word() = default;
  static Word epsilon(int dim) { return Word(dim); }

  int dim() const { return dim_; }
  const ZVec& length() const { return len_; }
  bool empty() const { return blocks_.empty(); }
  const std::vector<Block>& blocks() const { return blocks_; }

  Letter at(const ZVec& pos) const;  // pos in [1, length]
  Letter front() const { return blocks_.front().front(); }
  Letter back() const { return blocks_.back().back(); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.len_ == b.len_ && a.blocks_equal(b);
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  size_t hash() const;

 private:
  explicit Word(int dim) : len_(ZVec::zero(dim)), dim_(dim) {}
  bool blocks_equal(const Word& b) const;
  friend class WordBuilder;

  std::vector<Block> blocks_;
  ZVec len_;
  int dim_ = 0;
};

// Appends blocks left to right, keeping the sequence canonical: adjacent
// finite blocks concatenate, flat material is absorbed into neighbouring
// periodic patterns, aligned periodic blocks merge. Junctions must be
// reduced; push throws NotReduced otherwise.
class WordBuilder {
 public:
  explicit WordBuilder(int dim) : w_(dim) {}
  explicit WordBuilder(Word base) : w_(std::move(base)) {}

  void push_letter(Letter l);
  void push_letters(const std::vector<Letter>& ls);
  // Periodic material; the pattern is primitivised, a flat extent is
  // materialised as letters. extent must be >= 0 (zero contributes nothing).
  void push_periodic(std::vector<Letter> pattern, ZVec extent);
  void push_block(const Block& b);
  // Appends with free cancellation against the current tail: the engine of
  // the * product.
  void append_cancelling(const Block& b);
  void append_cancelling(const Word& w);

  const ZVec& length() const { return w_.len_; }
  Word take() { return std::move(w_); }
  const Word& peek() const { return w_; }

 private:
  Word w_;
};

struct ConcatCheck {
  bool reduced = true;
  std::optional<Word> word;       // present iff reduced
  Letter left{}, right{};         // the cancelling junction pair otherwise
};

// --- word algebra -----------------------------------------------------------

inline ZVec length(const Word& w) { return w.length(); }
inline Letter char_at(const Word& w, const ZVec& pos) { return w.at(pos); }

bool is_reduced(const std::vector<Letter>& letters);

Word concat(const Word& u, const Word& v);      // throws NotReduced on junction
ConcatCheck try_concat(const Word& u, const Word& v);

Word invert(const Word& w);

// Longest common initial segment. Total on this block class as far as we can
// tell; the NoCommonMax guard stays per the contract.
Word com(const Word& u, const Word& v);
ZVec c_len(const Word& u, const Word& v);
// |com(u^-1, v^-1)| without materialising anything
ZVec common_suffix_len(const Word& u, const Word& v);

// The product u * v = cancel com(u^-1, v), then concatenate the remainders.
Word mult(const Word& u, const Word& v);

// w = first o second with |first| = alpha, alpha in [0, |w|].
std::pair<Word, Word> split(const Word& w, const ZVec& alpha);

bool is_cyclically_reduced(const Word& w);  // throws Range on epsilon

// w = c^-1 o u o c with u cyclically reduced; c = epsilon when w already is.
struct CyclicDecomposition {
  Word conjugator;  // c
  Word core;        // u
};
CyclicDecomposition cyclic_decomposition(const Word& w);

// Pinned total order on canonical words: length (right lex), then block
// count, then blockwise structure. Used wherever ties need a canonical break.
bool canonical_less(const Word& a, const Word& b);

struct WordHash {
  size_t operator()(const Word& w) const { return w.hash(); }
};

struct CanonicalWordLess {
  bool operator()(const Word& a, const Word& b) const { return canonical_less(a, b); }
};

namespace detail {
// Euclidean remainder of a lattice coordinate by a small period length.
int imod(const Int& a, int p);
Block inverted_block(const Block& b);
Block rotate_pattern(const Block& b, int shift);  // new pat[i] = pat[(i+shift) mod p]
std::vector<Letter> primitive_root(std::vector<Letter> pat);
void check_pattern_reduced(const std::vector<Letter>& pat);
// Test seam for the NoCommonMax guard: runs the com scan with a crippled
// iteration budget so the error path stays exercised.
Word com_guarded(const Word& u, const Word& v, size_t max_steps);
}  // namespace detail

}  // namespace znt
