#include "znt/walk.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_set>

namespace znt {

// --- measures -----------------------------------------------------------------

Measure make_measure(std::vector<std::pair<GroupElement, double>> pairs) {
  if (pairs.empty()) fail(ErrKind::Config, "empty measure support");
  double total = 0;
  for (auto& [g, w] : pairs) {
    if (!(w > 0)) fail(ErrKind::Config, "measure weights must be positive");
    total += w;
  }
  for (auto& [g, w] : pairs) w /= total;
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = i + 1; j < pairs.size(); ++j)
      if (pairs[i].first.word == pairs[j].first.word)
        fail(ErrKind::Config, "duplicate element in the measure support");
  return {std::move(pairs)};
}

Measure uniform_symmetric(const Group& G) {
  std::vector<std::pair<GroupElement, double>> pairs;
  for (size_t i = 0; i < G.generator_count(); ++i) {
    pairs.emplace_back(generator_element(G, i, false), 1.0);
    pairs.emplace_back(generator_element(G, i, true), 1.0);
  }
  return make_measure(std::move(pairs));
}

Measure reflect(const Measure& mu) {
  std::vector<std::pair<GroupElement, double>> pairs;
  for (const auto& [g, w] : mu.support) pairs.emplace_back(group_inv(g), w);
  return make_measure(std::move(pairs));
}

Nondegeneracy check_nondegenerate(const Group& G, const Measure& mu, int horizon) {
  if (horizon < 1) fail(ErrKind::Range, "horizon must be at least 1");
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> frontier{Word::epsilon(G.dim())};
  seen.insert(frontier.front());
  for (int h = 0; h < horizon && seen.size() < 200000; ++h) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (const auto& [g, weight] : mu.support) {
        Word p = mult(w, g.word);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  for (size_t i = 0; i < G.generator_count(); ++i) {
    if (!seen.count(G.generator(i))) return Nondegeneracy::Unknown;
    if (!seen.count(invert(G.generator(i)))) return Nondegeneracy::Unknown;
  }
  return Nondegeneracy::Confirmed;
}

// --- paths --------------------------------------------------------------------

static std::vector<long> checkpoint_plan(long steps) {
  std::vector<long> cp;
  for (long i = 1; i < steps; i *= 2) cp.push_back(i);
  long start = steps - steps / 8;
  for (int j = 0; j < 32; ++j) {
    long i = start + (steps / 8) * j / 32;
    if (i >= 1 && i <= steps) cp.push_back(i);
  }
  cp.push_back(steps);
  std::sort(cp.begin(), cp.end());
  cp.erase(std::unique(cp.begin(), cp.end()), cp.end());
  return cp;
}

static int draw_index(const Measure& mu, double u) {
  double acc = 0;
  for (size_t i = 0; i < mu.support.size(); ++i) {
    acc += mu.support[i].second;
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(mu.support.size()) - 1;
}

WalkPath sample_path(const Group& G, const Measure& mu, uint64_t master_seed,
                     uint64_t walk_index, long steps) {
  if (steps < 0) fail(ErrKind::Range, "negative step count");
  WalkPath p;
  p.master_seed = master_seed;
  p.walk_index = walk_index;
  p.steps = steps;
  p.increments.reserve(static_cast<size_t>(steps));
  p.len_first.reserve(static_cast<size_t>(steps) + 1);
  p.heights.reserve(static_cast<size_t>(steps) + 1);
  p.checkpoints = checkpoint_plan(steps);
  Rng rng(master_seed, walk_index);
  WordBuilder acc(G.dim());
  p.len_first.push_back(0);
  p.heights.push_back(0);
  size_t next_cp = 0;
  if (steps == 0) p.checkpoints.clear();
  for (long i = 1; i <= steps; ++i) {
    int idx = draw_index(mu, static_cast<double>(rng.at(static_cast<uint64_t>(i)) >> 11) * 0x1.0p-53);
    p.increments.push_back(idx);
    acc.append_cancelling(mu.support[static_cast<size_t>(idx)].first.word);
    p.len_first.push_back(static_cast<long>(acc.length().first()));
    p.heights.push_back(static_cast<long>(acc.length().height()));
    if (next_cp < p.checkpoints.size() && p.checkpoints[next_cp] == i) {
      p.checkpoint_words.push_back(acc.peek());
      ++next_cp;
    }
  }
  p.final_word = acc.take();
  return p;
}

// --- bnd ----------------------------------------------------------------------

BoundaryExtraction boundary_point(const WalkPath& path) {
  BoundaryExtraction out;
  const auto& words = path.checkpoint_words;
  if (words.size() < 2) return out;
  size_t window = std::max<size_t>(2, (words.size() + 3) / 4);
  size_t from = words.size() - window;
  std::vector<Word> stable(window);
  stable[window - 1] = words.back();
  for (size_t j = window - 1; j-- > 0;) stable[j] = com(words[from + j], stable[j + 1]);
  // drop the final full word: only prefixes shared with something later count
  std::vector<Word> chain;
  for (size_t j = 0; j + 1 < window; ++j) {
    if (stable[j].empty()) continue;
    if (!chain.empty() && !(chain.back().length() < stable[j].length())) continue;
    chain.push_back(stable[j]);
  }
  if (chain.empty() || stable.front().empty()) {
    out.partial = std::move(chain);
    return out;
  }
  ZVec growth = chain.back().length() - chain.front().length();
  int type = 1;
  for (int i = growth.dim() - 1; i >= 0; --i)
    if (growth[i] != 0) {
      type = i + 1;
      break;
    }
  out.conclusive = true;
  out.end_type = type;
  out.stable_len = chain.back().length();
  out.end = empirical_end(std::move(chain), type);
  return out;
}

// --- S-subsequence detection ----------------------------------------------------

SDetection detect_S_subsequence(const Group& G, const Measure& mu, const WalkPath& path) {
  SDetection det;
  long n = path.steps;
  if (n < 4) return det;
  // reversed-increment match depth against the final segment
  const auto& inc = path.increments;
  auto match_depth = [&](long i) {
    long d = 0;
    while (d < 24 && i - 1 - d >= 0 && inc[static_cast<size_t>(n - 1 - d)] == inc[static_cast<size_t>(i - 1 - d)])
      ++d;
    return d;
  };
  // candidate pool: per window the deepest reversed match, plus the first and
  // last occurrence of every match depth (late deep matches pair with early
  // shallow ones in the chain search)
  long spacing = std::max<long>(4, n / 24);
  std::vector<long> picks;
  std::vector<long> first_exact(25, -1), last_exact(25, -1);
  for (long w0 = 1; w0 < n; w0 += spacing) {
    long best = -1, best_d = 0;
    for (long i = w0; i < std::min(n, w0 + spacing); ++i) {
      long d = match_depth(i);
      if (d > best_d) {
        best_d = d;
        best = i;
      }
      if (d >= 1 && d <= 24) {
        if (first_exact[static_cast<size_t>(d)] < 0) first_exact[static_cast<size_t>(d)] = i;
        last_exact[static_cast<size_t>(d)] = i;
      }
    }
    if (best >= 0) picks.push_back(best);
  }
  // one candidate per exact match depth at each end keeps the backward values
  // spread out; the chain search needs that diversity
  for (long l = 1; l <= 24; ++l) {
    if (first_exact[static_cast<size_t>(l)] > 0) picks.push_back(first_exact[static_cast<size_t>(l)]);
    if (last_exact[static_cast<size_t>(l)] > 0) picks.push_back(last_exact[static_cast<size_t>(l)]);
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  if (picks.size() < 2) return det;
  // one replay; the stability scans run in place without copying tau
  struct Cand {
    long step, hbar;
    ZVec f, b;
  };
  std::vector<Cand> cands;
  WordBuilder acc(G.dim());
  size_t next = 0;
  for (long i = 1; i <= n && next < picks.size(); ++i) {
    acc.append_cancelling(mu.support[static_cast<size_t>(inc[static_cast<size_t>(i - 1)])].first.word);
    while (next < picks.size() && picks[next] == i) {
      cands.push_back({i, path.heights[static_cast<size_t>(i)],
                       c_len(acc.peek(), path.final_word),
                       common_suffix_len(acc.peek(), path.final_word)});
      ++next;
    }
  }
  // longest chain with hbar, forward and backward all strictly increasing
  size_t m = cands.size();
  std::vector<int> len(m, 1), prev(m, -1);
  size_t best = 0;
  for (size_t j = 0; j < m; ++j) {
    for (size_t k = 0; k < j; ++k)
      if (cands[k].hbar < cands[j].hbar && cands[k].f < cands[j].f && cands[k].b < cands[j].b &&
          len[k] + 1 > len[j]) {
        len[j] = len[k] + 1;
        prev[j] = static_cast<int>(k);
      }
    if (len[j] > len[best]) best = j;
  }
  if (len[best] < 2) return det;
  std::vector<size_t> order;
  for (int j = static_cast<int>(best); j >= 0; j = prev[static_cast<size_t>(j)])
    order.push_back(static_cast<size_t>(j));
  std::reverse(order.begin(), order.end());
  for (size_t j : order)
    det.rows.push_back({cands[j].step, cands[j].hbar, cands[j].f, cands[j].b});
  return det;
}

// --- cone measures ----------------------------------------------------------------

ConeMeasure ConeMeasure::empirical(int depth, long samples, long inconclusive,
                                   std::map<Word, long, CanonicalWordLess> counts) {
  ConeMeasure m;
  m.depth_ = depth;
  m.samples_ = samples;
  m.inconclusive_ = inconclusive;
  m.counts_ = std::move(counts);
  return m;
}

ConeMeasure ConeMeasure::exact_free(int rank) {
  // The stationarity system for cylinder masses m_d of the uniform walk on
  // F_rank: m_d = (1/2r) m_{d-1} + ((2r-1)/2r) m_{d+1} for d >= 2 and
  // m_1 = (1/2r)(1 - m_1) + ((2r-1)/2r) m_2. The bounded solution is
  // m_d = ((2r-1)/2r) (2r-1)^{-d}.
  ConeMeasure m;
  m.exact_ = true;
  m.rank_ = rank;
  m.depth_ = 1 << 20;
  m.samples_ = 0;
  return m;
}

static long letter_depth(const Word& w) {
  // cone apexes are flat words
  const ZVec& len = w.length();
  for (int i = 1; i < len.dim(); ++i)
    if (len[i] != 0) fail(ErrKind::Range, "cone apex must be a finite-letter vertex");
  return static_cast<long>(len.first());
}

double ConeMeasure::mass(const Word& apex) const {
  long d = letter_depth(apex);
  if (d == 0) return 1.0;
  if (exact_) {
    double r2 = 2.0 * rank_;
    return ((r2 - 1.0) / r2) * std::pow(r2 - 1.0, -static_cast<double>(d));
  }
  if (d > depth_) {
    // monotone in the apex: a zero-mass prefix pins the deeper cone to zero
    Word prefix = split(apex, ZVec::row(apex.dim(), depth_)).first;
    if (!counts_.count(prefix)) return 0.0;
    fail(ErrKind::Precision, "cone table depth " + std::to_string(depth_) +
                                 " too shallow for a depth-" + std::to_string(d) + " apex");
  }
  auto it = counts_.find(apex);
  if (it == counts_.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(samples_);
}

double ConeMeasure::mass(const ConeExpr& cone) const {
  double m = mass(cone.apex);
  return cone.complement ? 1.0 - m : m;
}

double ConeMeasure::standard_error(const Word& apex) const {
  if (exact_) return 0.0;
  double p = mass(apex);
  return std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(samples_));
}

// --- ensembles ---------------------------------------------------------------------

EnsembleResult run_walk_ensemble(const Group& G, const Measure& mu, long walks, long steps,
                                 int depth, uint64_t master_seed, int threads, bool detect_s) {
  if (walks <= 0 || steps <= 0) fail(ErrKind::Range, "ensemble parameters must be positive");
  if (threads < 1) threads = 1;
  struct PerWalk {
    WalkRow row;
    std::vector<Word> apexes;
  };
  std::vector<PerWalk> per(static_cast<size_t>(walks));
  auto job = [&](long w0, long stride) {
    for (long w = w0; w < walks; w += stride) {
      WalkPath path = sample_path(G, mu, master_seed, static_cast<uint64_t>(w), steps);
      PerWalk& pw = per[static_cast<size_t>(w)];
      pw.row.walk = w;
      pw.row.steps = steps;
      pw.row.final_len = path.final_word.length();
      pw.row.final_hbar = path.heights.back();
      pw.row.drift = static_cast<double>(path.len_first.back()) / static_cast<double>(steps);
      BoundaryExtraction bnd = boundary_point(path);
      pw.row.conclusive = bnd.conclusive;
      if (bnd.conclusive) {
        pw.row.end_type = bnd.end_type;
        pw.row.stable_len = bnd.stable_len;
        const Word& deep = bnd.end->chain.back();
        long avail = std::min<long>(depth, static_cast<long>(deep.length().first()));
        if (deep.length().height() != 0) avail = depth;  // tall stable prefixes pass every row cut
        for (long l = 1; l <= avail; ++l)
          pw.apexes.push_back(split(deep, ZVec::row(G.dim(), l)).first);
      } else {
        pw.row.stable_len = ZVec::zero(G.dim());
      }
      if (detect_s) pw.row.s_rows = static_cast<long>(detect_S_subsequence(G, mu, path).rows.size());
    }
  };
  if (threads == 1) {
    job(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(job, t, threads);
    for (auto& th : pool) th.join();
  }

  EnsembleResult out;
  out.walks = walks;
  std::map<Word, long, CanonicalWordLess> counts;
  long conclusive = 0, top = 0, s_nonempty = 0;
  double drift = 0;
  for (auto& pw : per) {
    out.rows.push_back(pw.row);
    drift += pw.row.drift;
    if (pw.row.conclusive) {
      ++conclusive;
      if (pw.row.end_type == G.dim()) ++top;
      for (Word& a : pw.apexes) ++counts[a];
    } else {
      ++out.inconclusive;
    }
    if (pw.row.s_rows >= 2) ++s_nonempty;
  }
  out.mean_drift = drift / static_cast<double>(walks);
  out.type_top_rate = conclusive ? static_cast<double>(top) / static_cast<double>(conclusive) : 0.0;
  out.s_nonempty_rate = static_cast<double>(s_nonempty) / static_cast<double>(walks);
  if (10 * out.inconclusive > walks)
    fail(ErrKind::Experiment, "more than 10% of the paths failed to stabilise: " +
                                  std::to_string(out.inconclusive) + "/" + std::to_string(walks));
  out.cones = ConeMeasure::empirical(depth, conclusive, out.inconclusive, std::move(counts));
  return out;
}

// --- stationarity -------------------------------------------------------------------

std::vector<ResidualRow> stationarity_residual(const ConeMeasure& nu, const Measure& mu,
                                               const std::vector<Word>& apexes) {
  std::vector<ResidualRow> rows;
  for (const Word& apex : apexes) {
    double lhs = nu.mass(apex);
    double rhs = 0, se = nu.standard_error(apex);
    for (size_t gi = 0; gi < mu.support.size(); ++gi) {
      const auto& [g, w] = mu.support[gi];
      ConeExpr translated = translate_cone(invert(g.word), apex);
      try {
        rhs += w * nu.mass(translated);
        se += w * nu.standard_error(translated.apex);
      } catch (const Error& e) {
        if (e.kind() != ErrKind::Precision) throw;
        fail(ErrKind::Precision, "cone table too shallow for support element " +
                                     std::to_string(gi) + " against this apex: " + e.what());
      }
    }
    rows.push_back({apex, std::abs(lhs - rhs), se});
  }
  return rows;
}

std::vector<ResidualRow> stationarity_residual(const ConeMeasure& nu, const Measure& mu,
                                               int apex_depth) {
  std::vector<Word> apexes;
  for (const auto& [apex, count] : nu.counts()) {
    (void)count;
    if (apex.length().first() <= apex_depth) apexes.push_back(apex);
  }
  if (apexes.empty())
    fail(ErrKind::Precision, "no table apexes within depth " + std::to_string(apex_depth));
  return stationarity_residual(nu, mu, apexes);
}

// --- Dirac convergence ----------------------------------------------------------------

DiracProfile dirac_convergence_profile(const WalkPath& path, const ConeMeasure& nu,
                                       int cone_depth) {
  BoundaryExtraction bnd = boundary_point(path);
  if (!bnd.conclusive)
    fail(ErrKind::Precision, "no boundary point at this scale: profile undefined");
  const Word& deep = bnd.end->chain.back();
  int dim = deep.dim();
  if (deep.length() < ZVec::row(dim, cone_depth))
    fail(ErrKind::Precision, "stable prefix shallower than the requested cone depth");
  Word apex = split(deep, ZVec::row(dim, cone_depth)).first;
  DiracProfile prof;
  for (size_t j = 0; j < path.checkpoints.size(); ++j) {
    const Word& tau = path.checkpoint_words[j];
    double m = nu.mass(translate_cone(invert(tau), apex));
    prof.steps.push_back(path.checkpoints[j]);
    prof.mass.push_back(m);
  }
  return prof;
}

// --- strips ------------------------------------------------------------------------------

StripCounts strip_count(const Group& G, const BoundaryPoint& a, const BoundaryPoint& b,
                        int kmax) {
  if (kmax < 1) fail(ErrKind::Range, "kmax must be at least 1");
  LineBetween line = line_between(a, b);
  Ball ball = ball_enumerate(G, kmax);
  ZVec maxlen = ZVec::zero(G.dim());
  for (const auto& e : ball.elems) maxlen = std::max(maxlen, e.word.length());
  // fixed deep rays make the 10^6 membership tests cheap; same predicate as
  // line_contains
  Word ra = ray_prefix(a, maxlen.succ()), rb = ray_prefix(b, maxlen.succ());
  auto contains = [&](const Word& v) {
    if (!(v.length() >= line.meet.length())) return false;
    return c_len(v, ra) == v.length() || c_len(v, rb) == v.length();
  };
  StripCounts out;
  out.radius.resize(static_cast<size_t>(kmax));
  out.count.assign(static_cast<size_t>(kmax), 0);
  out.count_hbar.assign(static_cast<size_t>(kmax), 0);
  for (long k = 1; k <= kmax; ++k) out.radius[static_cast<size_t>(k - 1)] = k;
  for (const auto& e : ball.elems) {
    if (!contains(e.word)) continue;
    long h = static_cast<long>(e.word.length().height());
    for (long k = std::max<long>(e.len, 1); k <= kmax; ++k)
      ++out.count[static_cast<size_t>(k - 1)];
    for (long k = std::max<long>(std::max<long>(e.len, h), 1); k <= kmax; ++k)
      ++out.count_hbar[static_cast<size_t>(k - 1)];
  }
  // log-log least squares over the radii with nonzero counts
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long m = 0;
  for (long k = 1; k <= kmax; ++k) {
    long c = out.count[static_cast<size_t>(k - 1)];
    if (c <= 0) continue;
    double x = std::log(static_cast<double>(k)), y = std::log(static_cast<double>(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0)
    out.loglog_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

}  // namespace znt
