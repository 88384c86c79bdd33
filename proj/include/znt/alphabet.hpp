#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "znt/error.hpp"

namespace znt {

/// A signed letter x or x^-1. Codes order letters a < a^-1 < b < b^-1 < ...,
/// which is the tie-break order used everywhere a canonical choice is needed.
struct Letter {
  uint32_t code = 0;  // symbol*2 + (inverse ? 1 : 0)

  static Letter make(uint32_t symbol, bool inverse) { return Letter{symbol * 2 + (inverse ? 1u : 0u)}; }
  uint32_t symbol() const { return code / 2; }
  bool negative() const { return code & 1u; }
  Letter inverse() const { return Letter{code ^ 1u}; }

  friend bool operator==(Letter a, Letter b) { return a.code == b.code; }
  friend bool operator!=(Letter a, Letter b) { return a.code != b.code; }
  friend bool operator<(Letter a, Letter b) { return a.code < b.code; }
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(n);
  }

  uint32_t add(const std::string& name) {
    if (index_.count(name)) fail(ErrKind::Config, "duplicate alphabet symbol '" + name + "'");
    uint32_t id = static_cast<uint32_t>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  bool has(const std::string& name) const { return index_.count(name) != 0; }
  uint32_t id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(ErrKind::Syntax, "unknown symbol '" + name + "'");
    return it->second;
  }
  const std::string& name(uint32_t id) const { return names_.at(id); }
  size_t size() const { return names_.size(); }

  std::string spell(Letter l) const { return negative_suffix(name(l.symbol()), l.negative()); }

 private:
  static std::string negative_suffix(std::string base, bool neg) { return neg ? base + "^-1" : base; }

  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t> index_;
};

}  // namespace znt
