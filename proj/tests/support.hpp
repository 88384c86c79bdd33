#pragma once

#include <string>
#include <vector>

#include "znt/group.hpp"
#include "znt/naive.hpp"
#include "znt/parse.hpp"
#include "znt/rng.hpp"
#include "znt/word.hpp"

namespace znt::test {

inline const Alphabet& ab2() {
  static Alphabet a({"a", "b"});
  return a;
}

inline Word W(const std::string& text, int dim = 2) { return parse_word(text, ab2(), dim); }
inline std::string P(const Word& w) { return print_word(w, ab2()); }

inline naive::Flat flat_of(const std::string& text) { return naive::to_flat(W(text, 1)); }

// random reduced letter array over {a,b}^+- of the given length
inline naive::Flat random_flat(Rng& r, size_t len) {
  naive::Flat w;
  while (w.size() < len) {
    Letter l{static_cast<uint32_t>(r.next_below(4))};
    if (!w.empty() && l == w.back().inverse()) continue;
    w.push_back(l);
  }
  return w;
}

// random canonical Z^2-word assembled from reduced blocks; extents bounded by
// (max_run, max_height), block count by max_blocks
inline Word random_z2_word(Rng& r, int max_blocks, long max_run, long max_height) {
  WordBuilder b(2);
  int blocks = 1 + static_cast<int>(r.next_below(static_cast<uint64_t>(max_blocks)));
  for (int i = 0; i < blocks; ++i) {
    bool periodic = r.next_below(2) == 0;
    if (!periodic) {
      size_t len = 1 + r.next_below(static_cast<uint64_t>(max_run));
      for (size_t j = 0; j < len; ++j) {
        for (int tries = 0; tries < 16; ++tries) {
          Letter l{static_cast<uint32_t>(r.next_below(4))};
          if (!b.peek().empty() && l == b.peek().back().inverse()) continue;
          b.push_letter(l);
          break;
        }
      }
      continue;
    }
    // cyclically reduced pattern of length 1..3
    std::vector<Letter> pat;
    for (int tries = 0; tries < 64 && pat.empty(); ++tries) {
      size_t plen = 1 + r.next_below(3);
      std::vector<Letter> cand;
      for (size_t j = 0; j < plen; ++j) cand.push_back(Letter{static_cast<uint32_t>(r.next_below(4))});
      bool ok = true;
      for (size_t j = 0; ok && j + 1 < cand.size(); ++j)
        if (cand[j + 1] == cand[j].inverse()) ok = false;
      if (ok && cand.size() > 1 && cand.front() == cand.back().inverse()) ok = false;
      if (ok && (b.peek().empty() || !(cand.front() == b.peek().back().inverse()))) pat = cand;
    }
    if (pat.empty()) continue;
    long e1 = static_cast<long>(r.next_below(static_cast<uint64_t>(2 * max_run + 1))) - max_run;
    long eh = 1 + static_cast<long>(r.next_below(static_cast<uint64_t>(max_height)));
    ZVec ext = ZVec::zero(2);
    ext[0] = e1;
    ext[1] = eh;
    b.push_periodic(pat, ext);
  }
  return b.take();
}

// the rank-2 free group as a Z-workspace
inline Group free_group2() {
  return Group(1, ab2(), {{"a", W("a", 1)}, {"b", W("b", 1)}});
}

// F(a,b) extended by t = (a)^(0,5): the Z^2-free centraliser extension used
// throughout the height experiments
inline Group height_group2() {
  return Group(2, ab2(), {{"a", W("a")}, {"b", W("b")}, {"t", W("(a)^(0,5)")}});
}

// a position sampler that mixes rows and block boundaries
inline ZVec random_position(Rng& r, const Word& w) {
  const ZVec& len = w.length();
  Int h = len.height();
  ZVec pos = ZVec::zero(2);
  for (int tries = 0;; ++tries) {
    long row = static_cast<long>(r.next_below(static_cast<uint64_t>(static_cast<long>(h) + 1)));
    long col = static_cast<long>(r.next_below(61)) - 30;
    pos[0] = col;
    pos[1] = row;
    if (pos >= ZVec::one(2) && pos <= len) return pos;
    if (tries > 200) return len;  // degenerate small word; the end position always works
  }
}

}  // namespace znt::test
