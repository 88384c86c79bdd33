#pragma once

#include <string>

#include "znt/word.hpp"

namespace znt {

// Word grammar (whitespace-insensitive):
//   word := term* ; term := atom ("^" exponent)? ;
//   atom := identifier | "(" word ")" ;
//   exponent := integer | "(" integer ("," integer)* ")"
// An integer exponent repeats along the first coordinate; a tuple exponent is
// the extent of a periodic block and requires a flat, cyclically reduced base.
// Parsing never reduces: a cancelling junction is an error with a column.
Word parse_word(const std::string& text, const Alphabet& ab, int dim);

// Canonical text for a canonical word; parse(print(w)) == w.
std::string print_word(const Word& w, const Alphabet& ab);

// "(a1,...,an)" or a bare integer when dim == 1.
ZVec parse_zvec(const std::string& text, int dim);

}  // namespace znt
