#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "znt/word.hpp"

namespace znt::naive {

// Reference model over explicit letter arrays (the n=1 view of words whose
// length is a multiple of (1,0,...,0)). Deliberately dumb; kept independent of
// the block implementation so it can stand as its oracle.
using Flat = std::vector<Letter>;

bool reduced(const Flat& w);
Flat inverse(const Flat& w);
std::optional<Flat> concat_reduced(const Flat& u, const Flat& v);  // nullopt if junction cancels
Flat common_prefix(const Flat& u, const Flat& v);
Flat product(const Flat& u, const Flat& v);  // free cancellation
std::pair<Flat, Flat> split_at(const Flat& w, size_t k);
bool cyclically_reduced(const Flat& w);
std::pair<Flat, Flat> cyclic_decomposition(const Flat& w);  // (conjugator c, core u)

// Bridges to the block representation; to_flat requires a flat word and
// materialises every letter.
Flat to_flat(const Word& w);
Word to_word(const Flat& w, int dim);

}  // namespace znt::naive
