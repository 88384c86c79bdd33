#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "znt/boundary.hpp"
#include "znt/group.hpp"
#include "znt/rng.hpp"

namespace znt {

struct Measure {
  // normalized; no duplicate support words
  std::vector<std::pair<GroupElement, double>> support;
};

Measure make_measure(std::vector<std::pair<GroupElement, double>> pairs);
Measure uniform_symmetric(const Group& G);
Measure reflect(const Measure& mu);

enum class Nondegeneracy { Confirmed, Unknown };
// Confirmed when every generator and inverse shows up among <= horizon-fold
// products of the support; the property is only semi-decidable.
Nondegeneracy check_nondegenerate(const Group& G, const Measure& mu, int horizon);

// One mu-walk. Increments are support indices, deterministic in
// (master_seed, walk_index, step); tau values are cached at geometrically
// spaced checkpoints plus a uniform sweep of the final eighth.
struct WalkPath {
  uint64_t master_seed = 0;
  uint64_t walk_index = 0;
  long steps = 0;
  std::vector<int> increments;
  std::vector<long> len_first;   // |tau_i| first coordinate
  std::vector<long> heights;     // hbar(tau_i)
  // last (up to 8) letter codes of tau_i, newest in the low byte; feeds the
  // accumulation-direction search of the S-detector
  std::vector<uint64_t> tail_pack;
  std::vector<uint8_t> tail_count;
  std::vector<long> checkpoints;
  std::vector<Word> checkpoint_words;
  Word final_word;
};

WalkPath sample_path(const Group& G, const Measure& mu, uint64_t master_seed,
                     uint64_t walk_index, long steps);

// bnd estimator: the stable common prefix across the final quarter of
// checkpoints, as an increasing chain.
struct BoundaryExtraction {
  bool conclusive = false;
  std::optional<BoundaryPoint> end;
  int end_type = 0;        // producer's lower bound
  ZVec stable_len;         // length of the deepest stable prefix
  std::vector<Word> partial;  // the longest chain found when inconclusive
};
BoundaryExtraction boundary_point(const WalkPath& path);

// Empirical analogue of the S-subsequence: indices along which the seminorm
// grows strictly, the values stabilise towards the path's end, and the
// inverses stabilise towards a detected accumulation direction.
struct SDetection {
  struct Row {
    long step;
    long hbar;
    ZVec forward;   // |com(tau_step, tau_final)|
    ZVec backward;  // |com(tau_step^-1, anchor^-1)| for the detected anchor
  };
  std::vector<Row> rows;  // hbar, forward, backward all strictly increasing
  long anchor_step = 0;   // witness of the reversed accumulation direction
  bool nonempty() const { return rows.size() >= 2; }
};
SDetection detect_S_subsequence(const Group& G, const Measure& mu, const WalkPath& path);

// Cone frequencies of walk ends up to a letter depth; or the closed-form
// harmonic measure of the simple walk on a free group.
class ConeMeasure {
 public:
  static ConeMeasure empirical(int depth, long samples, long inconclusive,
                               std::map<Word, long, CanonicalWordLess> counts);
  // exit measure of the uniform nearest-neighbour walk on F_rank: the bounded
  // solution of the first-step stationarity system, mass (1/2r)(1/(2r-1))^(d-1)
  static ConeMeasure exact_free(int rank);

  double mass(const Word& apex) const;
  double mass(const ConeExpr& cone) const;
  double standard_error(const Word& apex) const;
  bool exact() const { return exact_; }
  int depth() const { return depth_; }
  long samples() const { return samples_; }
  long inconclusive() const { return inconclusive_; }
  const std::map<Word, long, CanonicalWordLess>& counts() const { return counts_; }

 private:
  bool exact_ = false;
  int rank_ = 0;
  int depth_ = 0;
  long samples_ = 0;
  long inconclusive_ = 0;
  std::map<Word, long, CanonicalWordLess> counts_;
};

struct WalkRow {
  long walk = 0;
  long steps = 0;
  ZVec final_len;
  long final_hbar = 0;
  double drift = 0;  // first length coordinate over steps
  bool conclusive = false;
  int end_type = 0;
  ZVec stable_len;
  long s_rows = 0;  // size of the detected S-subsequence
};

struct EnsembleResult {
  std::vector<WalkRow> rows;
  ConeMeasure cones;
  long walks = 0;
  long inconclusive = 0;
  double mean_drift = 0;
  double type_top_rate = 0;  // conclusive ends classified as type n
  double s_nonempty_rate = 0;
};

// Runs the ensemble; deterministic in master_seed regardless of threads.
// Aborts (Experiment) when more than 10% of the paths are inconclusive.
EnsembleResult run_walk_ensemble(const Group& G, const Measure& mu, long walks, long steps,
                                 int depth, uint64_t master_seed, int threads,
                                 bool detect_s = false);

struct ResidualRow {
  Word apex;
  double residual;
  double stderr_bound;
};
// |nu(U_x) - sum_g mu(g) nu(g^-1 U_x)| with the Monte-Carlo standard error;
// raises Precision naming (g, x) when the table cannot evaluate a translate.
std::vector<ResidualRow> stationarity_residual(const ConeMeasure& nu, const Measure& mu,
                                               const std::vector<Word>& apexes);
// all table apexes of letter depth <= apex_depth
std::vector<ResidualRow> stationarity_residual(const ConeMeasure& nu, const Measure& mu,
                                               int apex_depth);

// mass (tau_i . nu) gives to the depth-d cone around the path's end, per
// checkpoint.
struct DiracProfile {
  std::vector<long> steps;
  std::vector<double> mass;
};
DiracProfile dirac_convergence_profile(const WalkPath& path, const ConeMeasure& nu, int cone_depth);

struct StripCounts {
  std::vector<long> radius;      // 1..kmax
  std::vector<long> count;       // |S(a,b) ∩ B(k)|
  std::vector<long> count_hbar;  // also hbar(g) <= k
  double loglog_slope = 0;       // least squares of log count vs log k
};
StripCounts strip_count(const Group& G, const BoundaryPoint& a, const BoundaryPoint& b, int kmax);

}  // namespace znt
