#include "znt/word.hpp"

#include <algorithm>
#include <boost/functional/hash.hpp>

namespace znt {

namespace detail {

int imod(const Int& a, int p) {
  Int r = a % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

void check_pattern_reduced(const std::vector<Letter>& pat) {
  if (pat.empty()) fail(ErrKind::Range, "empty period");
  for (size_t i = 0; i + 1 < pat.size(); ++i)
    if (pat[i + 1] == pat[i].inverse()) fail(ErrKind::NotReduced, "period not reduced");
  if (pat.size() > 1 && pat.front() == pat.back().inverse())
    fail(ErrKind::NotReduced, "period not cyclically reduced");
}

std::vector<Letter> primitive_root(std::vector<Letter> pat) {
  int p = static_cast<int>(pat.size());
  for (int d = 1; d < p; ++d) {
    if (p % d) continue;
    bool ok = true;
    for (int i = 0; ok && i < p; ++i)
      if (!(pat[static_cast<size_t>(i)] == pat[static_cast<size_t>((i + d) % p)])) ok = false;
    if (ok) {
      pat.resize(static_cast<size_t>(d));
      return pat;
    }
  }
  return pat;
}

Block rotate_pattern(const Block& b, int shift) {
  int p = static_cast<int>(b.pat.size());
  shift = ((shift % p) + p) % p;
  if (shift == 0) return b;
  Block r = b;
  for (int i = 0; i < p; ++i) r.pat[static_cast<size_t>(i)] = b.pat[static_cast<size_t>((i + shift) % p)];
  return r;
}

Block inverted_block(const Block& b) {
  Block r;
  r.ext = b.ext;
  r.periodic = b.periodic;
  r.pat.resize(b.pat.size());
  int p = static_cast<int>(b.pat.size());
  if (b.periodic) {
    int e1 = imod(b.ext.first(), p);
    // inverse letter function: pat'[i] = pat[(e1 - 1 - i) mod p]^-1
    for (int i = 0; i < p; ++i)
      r.pat[static_cast<size_t>(i)] = b.pat[static_cast<size_t>(imod(Int(e1 - 1 - i), p))].inverse();
  } else {
    for (int i = 0; i < p; ++i) r.pat[static_cast<size_t>(i)] = b.pat[static_cast<size_t>(p - 1 - i)].inverse();
  }
  return r;
}

}  // namespace detail

using detail::imod;

static bool is_flat(const ZVec& v) {
  for (int i = 1; i < v.dim(); ++i)
    if (v[i] != 0) return false;
  return true;
}

static constexpr long kMaxMaterialise = 1u << 20;

static long flat_count(const ZVec& v) {
  if (v.first() < 0 || v.first() > kMaxMaterialise)
    fail(ErrKind::Range, "letter run too long to materialise: " + v.str());
  return static_cast<long>(v.first());
}

// --- Block ------------------------------------------------------------------

Letter Block::front() const { return pat.front(); }

Letter Block::back() const {
  if (!periodic) return pat.back();
  return pat[static_cast<size_t>(imod(ext.first() - 1, static_cast<int>(pat.size())))];
}

Letter Block::at(const ZVec& rel) const {
  if (periodic) return pat[static_cast<size_t>(imod(rel.first() - 1, static_cast<int>(pat.size())))];
  Int i = rel.first() - 1;
  if (i < 0 || i >= static_cast<long>(pat.size())) fail(ErrKind::Range, "position outside block");
  return pat[static_cast<size_t>(static_cast<long>(i))];
}

// --- Word basics -------------------------------------------------------------

Letter Word::at(const ZVec& pos) const {
  if (!(pos >= ZVec::one(dim_) && pos <= len_))
    fail(ErrKind::Range, "position " + pos.str() + " outside [1, " + len_.str() + "]");
  ZVec before = ZVec::zero(dim_);
  for (const Block& b : blocks_) {
    ZVec after = before + b.ext;
    if (pos <= after) return b.at(pos - before);
    before = after;
  }
  fail(ErrKind::Range, "position lookup fell through");  // unreachable: extents sum to len_
}

bool Word::blocks_equal(const Word& o) const {
  if (blocks_.size() != o.blocks_.size()) return false;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const Block &a = blocks_[i], &b = o.blocks_[i];
    if (a.periodic != b.periodic || a.pat.size() != b.pat.size() || a.ext != b.ext) return false;
    for (size_t j = 0; j < a.pat.size(); ++j)
      if (!(a.pat[j] == b.pat[j])) return false;
  }
  return true;
}

size_t Word::hash() const {
  size_t h = len_.hash();
  for (const Block& b : blocks_) {
    boost::hash_combine(h, b.periodic);
    for (Letter l : b.pat) boost::hash_combine(h, l.code);
    boost::hash_combine(h, b.ext.hash());
  }
  return h;
}

bool canonical_less(const Word& a, const Word& b) {
  Ord c = cmp(a.length(), b.length());
  if (c != Ord::Equal) return c == Ord::Less;
  if (a.blocks().size() != b.blocks().size()) return a.blocks().size() < b.blocks().size();
  for (size_t i = 0; i < a.blocks().size(); ++i) {
    const Block &x = a.blocks()[i], &y = b.blocks()[i];
    if (x.periodic != y.periodic) return y.periodic;  // finite sorts first
    if (x.pat.size() != y.pat.size()) return x.pat.size() < y.pat.size();
    for (size_t j = 0; j < x.pat.size(); ++j)
      if (x.pat[j].code != y.pat[j].code) return x.pat[j].code < y.pat[j].code;
    Ord e = cmp(x.ext, y.ext);
    if (e != Ord::Equal) return e == Ord::Less;
  }
  return false;
}

// --- fragment scan (canonical merging, com, cancellation) --------------------

namespace {

struct Frag {
  const Block* b;
  ZVec used;  // consumed prefix of *b (only the first coordinate shifts the pattern)

  ZVec rem() const { return b->ext - used; }
  int plen() const { return static_cast<int>(b->pat.size()); }
  Letter at_row(long j) const {  // j-th next letter along the first coordinate
    if (b->periodic) return b->pat[static_cast<size_t>(imod(used.first() + j - 1, plen()))];
    Int i = used.first() + j - 1;
    return b->pat[static_cast<size_t>(static_cast<long>(i))];
  }
};

// Agreement of two fragments over min(remA, remB); returns the agreed prefix
// delta and whether a mismatch was found at delta+1. Cost is bounded by the
// stored pattern sizes (Fine-Wilf window for periodic runs), never by extents.
std::pair<ZVec, bool> agree(const Frag& A, const Frag& B) {
  ZVec ra = A.rem(), rb = B.rem();
  ZVec m = ra < rb ? ra : rb;
  int dim = m.dim();
  long window;
  if (!is_flat(m)) {
    // a finite block's remainder is flat, so both sides are periodic here
    window = A.plen() + B.plen();
    for (long j = 1; j <= window; ++j)
      if (!(A.at_row(j) == B.at_row(j))) return {ZVec::row(dim, j - 1), true};
    return {m, false};  // patterns coincide as functions; Fine-Wilf extends over m
  }
  Int k = m.first();
  if (A.b->periodic && B.b->periodic) {
    Int w = std::min(k, Int(A.plen() + B.plen()));
    window = static_cast<long>(w);
    for (long j = 1; j <= window; ++j)
      if (!(A.at_row(j) == B.at_row(j))) return {ZVec::row(dim, j - 1), true};
    return {m, false};
  }
  window = static_cast<long>(k);  // bounded by a finite block's letter count
  for (long j = 1; j <= window; ++j)
    if (!(A.at_row(j) == B.at_row(j))) return {ZVec::row(dim, j - 1), true};
  return {m, false};
}

Block cut_block_prefix(const Block& b, const ZVec& d) {
  if (!b.periodic) {
    Block r = b;
    long k = flat_count(d);
    r.pat.erase(r.pat.begin(), r.pat.begin() + k);
    r.ext = b.ext - d;
    return r;
  }
  Block r = detail::rotate_pattern(b, imod(d.first(), static_cast<int>(b.pat.size())));
  r.ext = b.ext - d;
  return r;
}

Block cut_block_suffix(const Block& b, const ZVec& d) {
  Block r = b;
  r.ext = b.ext - d;
  if (!b.periodic) r.pat.resize(static_cast<size_t>(flat_count(r.ext)));
  return r;
}

// How far the letter function of `next` keeps extending the pattern of the
// periodic block `t` past its end. Capped at next's extent.
ZVec pattern_continuation(const Block& t, const Block& next) {
  int p = static_cast<int>(t.pat.size());
  Block cont = t;
  ZVec off = ZVec::row(t.ext.dim(), imod(t.ext.first(), p));
  cont.ext = next.ext + off;
  auto [d, mismatch] = agree(Frag{&cont, off}, Frag{&next, ZVec::zero(t.ext.dim())});
  (void)mismatch;
  return d;
}

}  // namespace

// --- builder ----------------------------------------------------------------

void WordBuilder::push_letter(Letter l) {
  Block b;
  b.periodic = false;
  b.pat = {l};
  b.ext = ZVec::row(w_.dim_, 1);
  push_block(b);
}

void WordBuilder::push_letters(const std::vector<Letter>& ls) {
  for (Letter l : ls) push_letter(l);
}

void WordBuilder::push_periodic(std::vector<Letter> pattern, ZVec extent) {
  if (extent.is_zero()) return;
  if (!extent.positive()) fail(ErrKind::Range, "block extent must be positive: " + extent.str());
  detail::check_pattern_reduced(pattern);
  Block b;
  b.pat = detail::primitive_root(std::move(pattern));
  b.ext = std::move(extent);
  b.periodic = true;
  push_block(b);
}

// One reduced block, canonical merging against the current tail.
void WordBuilder::push_block(const Block& incoming) {
  if (incoming.ext.is_zero()) return;
  Block b = incoming;
  int dim = w_.dim_;

  // flat periodic material becomes an explicit finite run
  if (b.periodic && is_flat(b.ext)) {
    long k = flat_count(b.ext);
    int p = static_cast<int>(b.pat.size());
    std::vector<Letter> ls;
    ls.reserve(static_cast<size_t>(k));
    for (long j = 0; j < k; ++j) ls.push_back(b.pat[static_cast<size_t>(imod(Int(j), p))]);
    b.periodic = false;
    b.pat = std::move(ls);
    b.ext = ZVec::row(dim, k);
  }

  w_.len_ += b.ext;
  auto& blocks = w_.blocks_;

  for (;;) {
    if (blocks.empty()) {
      blocks.push_back(std::move(b));
      return;
    }
    Block& t = blocks.back();
    if (t.back() == b.front().inverse())
      fail(ErrKind::NotReduced, "junction not reduced");

    if (!t.periodic && !b.periodic) {
      t.pat.insert(t.pat.end(), b.pat.begin(), b.pat.end());
      t.ext += b.ext;
      return;
    }
    if (t.periodic) {
      // greedy left: t absorbs the longest prefix of b's letter function that
      // continues t's pattern, which pins the block boundary canonically
      ZVec d = pattern_continuation(t, b);
      if (d == b.ext) {
        t.ext += b.ext;
        return;
      }
      if (!d.is_zero()) {
        t.ext += d;
        b = cut_block_prefix(b, d);
      }
      blocks.push_back(std::move(b));
      return;
    }
    // t finite, b periodic: absorb the longest suffix of t extending b leftward
    int p = static_cast<int>(b.pat.size());
    size_t d = 0;
    while (d < t.pat.size() &&
           t.pat[t.pat.size() - 1 - d] == b.pat[static_cast<size_t>(imod(Int(-1 - static_cast<long>(d)), p))])
      ++d;
    if (d == 0) {
      blocks.push_back(std::move(b));
      return;
    }
    b = detail::rotate_pattern(b, -static_cast<int>(d % static_cast<size_t>(p)));
    b.ext += ZVec::row(dim, static_cast<long>(d));
    t.pat.resize(t.pat.size() - d);
    t.ext -= ZVec::row(dim, static_cast<long>(d));
    if (t.pat.empty()) blocks.pop_back();
    // retry: b may now merge with the exposed tail
  }
}

// --- com ----------------------------------------------------------------------

namespace {

struct Cursor {
  const std::vector<Block>* blocks;
  size_t idx = 0;
  ZVec used;

  explicit Cursor(const Word& w) : blocks(&w.blocks()), used(ZVec::zero(w.dim())) {}
  bool done() const { return idx == blocks->size(); }
  Frag frag() const { return Frag{&(*blocks)[idx], used}; }
  void advance(const ZVec& d) {
    used += d;
    if (used == (*blocks)[idx].ext) {
      ++idx;
      used = ZVec::zero(used.dim());
    }
  }
};

}  // namespace

static ZVec com_scan(const Word& u, const Word& v, size_t max_steps) {
  if (u.dim() != v.dim()) fail(ErrKind::Dimension, "com across dimensions");
  Cursor cu(u), cv(v);
  ZVec total = ZVec::zero(u.dim());
  size_t steps = 0;
  while (!cu.done() && !cv.done()) {
    if (++steps > max_steps)
      fail(ErrKind::NoCommonMax, "no maximal common initial segment");
    auto [d, mismatch] = agree(cu.frag(), cv.frag());
    total += d;
    cu.advance(d);
    cv.advance(d);
    if (mismatch) break;
  }
  return total;
}

// each scan step consumes a whole fragment or terminates; anything longer
// would mean the agreement set has no maximum
static size_t scan_budget(const Word& u, const Word& v) {
  return u.blocks().size() + v.blocks().size() + 2;
}

Word com(const Word& u, const Word& v) {
  return split(u, com_scan(u, v, scan_budget(u, v))).first;
}

Word detail::com_guarded(const Word& u, const Word& v, size_t max_steps) {
  return split(u, com_scan(u, v, max_steps)).first;
}

ZVec c_len(const Word& u, const Word& v) { return com_scan(u, v, scan_budget(u, v)); }

ZVec common_suffix_len(const Word& u, const Word& v) {
  if (u.dim() != v.dim()) fail(ErrKind::Dimension, "suffix scan across dimensions");
  // walk both block lists from the back over inverted fragments
  size_t iu = u.blocks().size(), iv = v.blocks().size();
  Block bu, bv;
  bool fu = false, fv = false;  // a partially consumed inverted block is live
  ZVec total = ZVec::zero(u.dim());
  size_t steps = 0, budget = scan_budget(u, v);
  while ((fu || iu > 0) && (fv || iv > 0)) {
    if (++steps > budget) fail(ErrKind::NoCommonMax, "no maximal common suffix");
    if (!fu) bu = detail::inverted_block(u.blocks()[--iu]), fu = true;
    if (!fv) bv = detail::inverted_block(v.blocks()[--iv]), fv = true;
    auto [d, mismatch] = agree(Frag{&bu, ZVec::zero(u.dim())}, Frag{&bv, ZVec::zero(u.dim())});
    total += d;
    if (mismatch) break;
    if (d == bu.ext)
      fu = false;
    else
      bu = cut_block_prefix(bu, d);
    if (d == bv.ext)
      fv = false;
    else
      bv = cut_block_prefix(bv, d);
  }
  return total;
}

// --- split / concat / invert --------------------------------------------------

static void push_block_piece(WordBuilder& out, const Block& b, const ZVec& from, const ZVec& to) {
  // the sub-block of b on positions (from, to]
  ZVec ext = to - from;
  if (ext.is_zero()) return;
  if (!b.periodic) {
    long i0 = flat_count(from), i1 = flat_count(to);
    for (long i = i0; i < i1; ++i) out.push_letter(b.pat[static_cast<size_t>(i)]);
    return;
  }
  Block piece = detail::rotate_pattern(b, imod(from.first(), static_cast<int>(b.pat.size())));
  piece.ext = ext;
  if (is_flat(ext)) {
    long k = flat_count(ext);
    int p = static_cast<int>(piece.pat.size());
    for (long j = 0; j < k; ++j) out.push_letter(piece.pat[static_cast<size_t>(imod(Int(j), p))]);
    return;
  }
  out.push_block(piece);
}

std::pair<Word, Word> split(const Word& w, const ZVec& alpha) {
  if (!(alpha >= ZVec::zero(w.dim()) && alpha <= w.length()))
    fail(ErrKind::Range, "split position " + alpha.str() + " outside [0, " + w.length().str() + "]");
  WordBuilder head(w.dim()), tail(w.dim());
  ZVec before = ZVec::zero(w.dim());
  for (const Block& b : w.blocks()) {
    ZVec after = before + b.ext;
    if (after <= alpha) {
      head.push_block(b);
    } else if (before >= alpha) {
      tail.push_block(b);
    } else {
      ZVec cut = alpha - before;
      push_block_piece(head, b, ZVec::zero(w.dim()), cut);
      push_block_piece(tail, b, cut, b.ext);
    }
    before = after;
  }
  return {head.take(), tail.take()};
}

ConcatCheck try_concat(const Word& u, const Word& v) {
  ConcatCheck r;
  if (!u.empty() && !v.empty() && v.front() == u.back().inverse()) {
    r.reduced = false;
    r.left = u.back();
    r.right = v.front();
    return r;
  }
  WordBuilder b(u);
  for (const Block& blk : v.blocks()) b.push_block(blk);
  r.word = b.take();
  return r;
}

Word concat(const Word& u, const Word& v) {
  ConcatCheck r = try_concat(u, v);
  if (!r.reduced) fail(ErrKind::NotReduced, "concatenation junction cancels");
  return *std::move(r.word);
}

Word invert(const Word& w) {
  WordBuilder b(w.dim());
  for (auto it = w.blocks().rbegin(); it != w.blocks().rend(); ++it)
    b.push_block(detail::inverted_block(*it));
  return b.take();
}

bool is_reduced(const std::vector<Letter>& letters) {
  for (size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i + 1] == letters[i].inverse()) return false;
  return true;
}

// --- product ------------------------------------------------------------------

void WordBuilder::append_cancelling(const Block& incoming) {
  Block cur = incoming;
  auto& blocks = w_.blocks_;
  bool tail_cut = false;
  while (!blocks.empty() && !cur.ext.is_zero()) {
    Block inv_tail = detail::inverted_block(blocks.back());
    auto [d, mismatch] = agree(Frag{&inv_tail, ZVec::zero(w_.dim_)}, Frag{&cur, ZVec::zero(w_.dim_)});
    (void)mismatch;
    if (d.is_zero()) break;
    Block& t = blocks.back();
    w_.len_ -= d;
    if (d == t.ext) {
      blocks.pop_back();
      tail_cut = false;
    } else {
      t = cut_block_suffix(t, d);
      tail_cut = true;
    }
    if (d == cur.ext) {
      cur.ext = ZVec::zero(w_.dim_);
      cur.pat.clear();
    } else {
      cur = cut_block_prefix(cur, d);
    }
  }
  // a partially cut tail may have gone flat or may now merge leftwards
  if (tail_cut) {
    Block t = std::move(blocks.back());
    blocks.pop_back();
    w_.len_ -= t.ext;
    push_block(t);
  }
  if (!cur.ext.is_zero()) push_block(cur);
}

void WordBuilder::append_cancelling(const Word& w) {
  for (const Block& b : w.blocks()) append_cancelling(b);
}

Word mult(const Word& u, const Word& v) {
  if (u.dim() != v.dim()) fail(ErrKind::Dimension, "product across dimensions");
  WordBuilder acc(u);
  acc.append_cancelling(v);
  return acc.take();
}

// --- cyclic structure -----------------------------------------------------------

bool is_cyclically_reduced(const Word& w) {
  if (w.empty()) fail(ErrKind::Range, "cyclic reduction of the empty word");
  return !(w.front().inverse() == w.back());
}

CyclicDecomposition cyclic_decomposition(const Word& w) {
  if (w.empty()) fail(ErrKind::Range, "cyclic decomposition of the empty word");
  Word winv = invert(w);
  Word s = com(w, winv);  // s = c^-1
  ZVec twice = s.length() + s.length();
  if (!(twice < w.length())) fail(ErrKind::NotInCDR, "matched inverse halves overlap");
  auto [head, rest] = split(w, s.length());
  auto [core, tail] = split(rest, rest.length() - s.length());
  if (!(tail == invert(s)) || core.empty() || !is_cyclically_reduced(core))
    fail(ErrKind::NotInCDR, "no cyclic decomposition");
  return {invert(s), core};
}

}  // namespace znt
