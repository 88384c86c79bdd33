#pragma once

#include <stdexcept>
#include <string>

namespace znt {

// One error hierarchy for the whole library. The CLI maps categories to
// exit codes (config -> 2, experiment -> 1, usage is handled by the parser).
enum class ErrKind {
  Syntax,            // word/expression grammar violation, carries a column
  Dimension,         // mixed ambient dimensions
  Range,             // position/argument outside its domain
  NotReduced,        // a letter function with a cancelling successor pair
  NoCommonMax,       // com(u,v) has no maximum (kept per the word-algebra contract)
  NotInCDR,          // no cyclic decomposition
  ProductUndefined,  // * failed; presentation-invalid when raised through a Group
  Unexplored,        // metric query left the explored region
  Precision,         // empirical data too shallow for the query
  Config,            // workspace/measure invalid
  Experiment,        // run-time failure of an experiment (e.g. abort threshold)
};

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace znt
