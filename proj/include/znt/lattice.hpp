#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "znt/error.hpp"

namespace znt {

// Coordinates never overflow: cpp_int keeps small values inline and grows on
// demand, which is the escalation behaviour the lattice contract asks for.
using Int = boost::multiprecision::cpp_int;

enum class Ord { Less, Equal, Greater };

/// An element of Z^n under the right lexicographic order (compare from the
/// last coordinate down). Doubles as length, position and distance value.
class ZVec {
 public:
  ZVec() = default;
  explicit ZVec(std::vector<Int> coords) : c_(std::move(coords)) {}
  static ZVec zero(int dim) { return ZVec(std::vector<Int>(static_cast<size_t>(dim))); }
  /// The minimal positive element 1 = (1,0,...,0).
  static ZVec one(int dim) {
    ZVec v = zero(dim);
    v.c_[0] = 1;
    return v;
  }
  /// k steps along the first coordinate: (k,0,...,0).
  static ZVec row(int dim, Int k) {
    ZVec v = zero(dim);
    v.c_[0] = std::move(k);
    return v;
  }

  int dim() const { return static_cast<int>(c_.size()); }
  const Int& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  Int& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  const std::vector<Int>& coords() const { return c_; }

  /// Last coordinate a_n; the value of the seminorm on lengths.
  const Int& height() const { return c_.back(); }
  const Int& first() const { return c_.front(); }

  bool is_zero() const {
    for (const Int& a : c_)
      if (a != 0) return false;
    return true;
  }

  friend ZVec operator+(const ZVec& a, const ZVec& b) {
    check_dims(a, b);
    ZVec r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend ZVec operator-(const ZVec& a, const ZVec& b) {
    check_dims(a, b);
    ZVec r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend ZVec operator-(const ZVec& a) {
    ZVec r = a;
    for (Int& x : r.c_) x = -x;
    return r;
  }
  ZVec& operator+=(const ZVec& b) {
    check_dims(*this, b);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
  }
  ZVec& operator-=(const ZVec& b) {
    check_dims(*this, b);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
  }
  friend ZVec operator*(const Int& m, const ZVec& a) {
    ZVec r = a;
    for (Int& x : r.c_) x *= m;
    return r;
  }

  ZVec succ() const { return *this + one(dim()); }
  ZVec pred() const { return *this - one(dim()); }

  /// Right lexicographic comparison.
  friend Ord cmp(const ZVec& a, const ZVec& b) {
    check_dims(a, b);
    for (int i = a.dim() - 1; i >= 0; --i) {
      if (a.c_[static_cast<size_t>(i)] < b.c_[static_cast<size_t>(i)]) return Ord::Less;
      if (a.c_[static_cast<size_t>(i)] > b.c_[static_cast<size_t>(i)]) return Ord::Greater;
    }
    return Ord::Equal;
  }
  friend bool operator==(const ZVec& a, const ZVec& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ZVec& a, const ZVec& b) { return !(a == b); }
  friend bool operator<(const ZVec& a, const ZVec& b) { return cmp(a, b) == Ord::Less; }
  friend bool operator<=(const ZVec& a, const ZVec& b) { return cmp(a, b) != Ord::Greater; }
  friend bool operator>(const ZVec& a, const ZVec& b) { return cmp(a, b) == Ord::Greater; }
  friend bool operator>=(const ZVec& a, const ZVec& b) { return cmp(a, b) != Ord::Less; }

  bool positive() const { return is_positive(*this); }

  /// alpha <= gamma <= beta in the right lexicographic order.
  friend bool in_segment(const ZVec& gamma, const ZVec& alpha, const ZVec& beta) {
    return alpha <= gamma && gamma <= beta;
  }

  /// Textual form "(a1,...,an)"; n = 1 prints as a bare integer.
  std::string str() const {
    if (dim() == 1) return c_[0].str();
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
      if (i) s += ",";
      s += c_[static_cast<size_t>(i)].str();
    }
    s += ")";
    return s;
  }

  size_t hash() const {
    size_t h = static_cast<size_t>(dim()) * 0x9e3779b97f4a7c15ULL;
    for (const Int& a : c_) boost::hash_combine(h, a);
    return h;
  }

 private:
  static void check_dims(const ZVec& a, const ZVec& b) {
    if (a.dim() != b.dim())
      fail(ErrKind::Dimension, "lattice dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                   std::to_string(b.dim()));
  }
  static bool is_positive(const ZVec& a) {
    for (int i = a.dim() - 1; i >= 0; --i) {
      const Int& x = a.c_[static_cast<size_t>(i)];
      if (x > 0) return true;
      if (x < 0) return false;
    }
    return false;
  }

  std::vector<Int> c_;
};

inline Int height(const ZVec& a) { return a.height(); }

struct ZVecHash {
  size_t operator()(const ZVec& v) const { return v.hash(); }
};

}  // namespace znt
