#include "znt/naive.hpp"

#include <algorithm>

namespace znt::naive {

bool reduced(const Flat& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == w[i].inverse()) return false;
  return true;
}

Flat inverse(const Flat& w) {
  Flat r(w.rbegin(), w.rend());
  for (Letter& l : r) l = l.inverse();
  return r;
}

std::optional<Flat> concat_reduced(const Flat& u, const Flat& v) {
  if (!u.empty() && !v.empty() && v.front() == u.back().inverse()) return std::nullopt;
  Flat r = u;
  r.insert(r.end(), v.begin(), v.end());
  return r;
}

Flat common_prefix(const Flat& u, const Flat& v) {
  size_t i = 0;
  while (i < u.size() && i < v.size() && u[i] == v[i]) ++i;
  return Flat(u.begin(), u.begin() + static_cast<long>(i));
}

Flat product(const Flat& u, const Flat& v) {
  Flat r = u;
  size_t i = 0;
  while (!r.empty() && i < v.size() && v[i] == r.back().inverse()) {
    r.pop_back();
    ++i;
  }
  r.insert(r.end(), v.begin() + static_cast<long>(i), v.end());
  return r;
}

std::pair<Flat, Flat> split_at(const Flat& w, size_t k) {
  return {Flat(w.begin(), w.begin() + static_cast<long>(k)),
          Flat(w.begin() + static_cast<long>(k), w.end())};
}

bool cyclically_reduced(const Flat& w) { return !(w.front().inverse() == w.back()); }

std::pair<Flat, Flat> cyclic_decomposition(const Flat& w) {
  size_t n = w.size();
  size_t m = 0;
  while (2 * (m + 1) < n && w[m] == w[n - 1 - m].inverse()) ++m;
  Flat cinv(w.begin(), w.begin() + static_cast<long>(m));
  Flat core(w.begin() + static_cast<long>(m), w.end() - static_cast<long>(m));
  return {inverse(cinv), core};
}

Flat to_flat(const Word& w) {
  Flat r;
  for (ZVec pos = ZVec::one(w.dim()); pos <= w.length(); pos = pos.succ()) r.push_back(w.at(pos));
  return r;
}

Word to_word(const Flat& w, int dim) {
  WordBuilder b(dim);
  for (Letter l : w) b.push_letter(l);
  return b.take();
}

}  // namespace znt::naive
