#include "znt/parse.hpp"

#include <cctype>

namespace znt {

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void err(const std::string& what) const {
    fail(ErrKind::Syntax, what + " at column " + std::to_string(pos + 1));
  }
  void expect(char c) {
    if (peek() != c) err(std::string("expected '") + c + "'");
    ++pos;
  }
  bool ident_start() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || epsilon_ahead();
  }
  bool epsilon_ahead() {
    skip_ws();
    return pos + 1 < s.size() && static_cast<unsigned char>(s[pos]) == 0xCE &&
           static_cast<unsigned char>(s[pos + 1]) == 0xB5;  // UTF-8 epsilon
  }
  std::string ident() {
    skip_ws();
    if (epsilon_ahead()) {
      pos += 2;
      return "\xCE\xB5";
    }
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
      ++pos;
    if (pos == start) err("expected identifier");
    return s.substr(start, pos - start);
  }
  Int integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) err("expected integer");
    return Int(s.substr(start, pos - start));
  }
};

struct WordParser {
  Lexer lx;
  const Alphabet& ab;
  int dim;

  Word parse() {
    Word w = word();
    if (!lx.done()) lx.err("unexpected input");
    return w;
  }

  Word word() {
    WordBuilder b(dim);
    for (;;) {
      char c = lx.peek();
      if (c == '\0' || c == ')') break;
      term(b);
    }
    return b.take();
  }

  void term(WordBuilder& out) {
    size_t col = lx.pos;
    Word base = atom();
    if (lx.peek() != '^') {
      append(out, base, col);
      return;
    }
    ++lx.pos;
    if (lx.peek() == '(') {
      ++lx.pos;
      std::vector<Int> coords;
      coords.push_back(lx.integer());
      while (lx.peek() == ',') {
        ++lx.pos;
        coords.push_back(lx.integer());
      }
      lx.expect(')');
      if (static_cast<int>(coords.size()) != dim)
        lx.err("exponent tuple has dimension " + std::to_string(coords.size()) + ", workspace has " +
               std::to_string(dim));
      push_power(out, base, ZVec(std::move(coords)), col);
      return;
    }
    Int k = lx.integer();
    Word rep = k < 0 ? invert(base) : base;
    Int n = k < 0 ? -k : k;
    if (n > 4096) lx.err("integer exponent too large");
    for (Int i = 0; i < n; ++i) append(out, rep, col);
  }

  void append(WordBuilder& out, const Word& w, size_t col) {
    try {
      for (const Block& b : w.blocks()) out.push_block(b);
    } catch (const Error& e) {
      if (e.kind() != ErrKind::NotReduced) throw;
      fail(ErrKind::NotReduced, std::string(e.what()) + " at column " + std::to_string(col + 1));
    }
  }

  void push_power(WordBuilder& out, const Word& base, ZVec extent, size_t col) {
    if (extent.is_zero()) return;
    if (base.empty()) lx.err("empty base for a tuple exponent");
    std::vector<Letter> pattern;
    ZVec flat = ZVec::zero(dim);
    for (const Block& b : base.blocks()) {
      if (b.periodic) lx.err("tuple exponent needs a finite base word");
      pattern.insert(pattern.end(), b.pat.begin(), b.pat.end());
      flat += b.ext;
    }
    (void)flat;
    if (!is_cyclically_reduced(base))
      fail(ErrKind::NotReduced,
           "tuple exponent base is not cyclically reduced at column " + std::to_string(col + 1));
    try {
      out.push_periodic(std::move(pattern), std::move(extent));
    } catch (const Error& e) {
      if (e.kind() == ErrKind::Range)
        fail(ErrKind::Syntax, std::string(e.what()) + " at column " + std::to_string(col + 1));
      if (e.kind() == ErrKind::NotReduced)
        fail(ErrKind::NotReduced, std::string(e.what()) + " at column " + std::to_string(col + 1));
      throw;
    }
  }

  Word atom() {
    if (lx.peek() == '(') {
      ++lx.pos;
      Word w = word();
      lx.expect(')');
      return w;
    }
    std::string name = lx.ident();
    if (name == "\xCE\xB5" || name == "1") return Word::epsilon(dim);
    if (!ab.has(name)) lx.err("unknown symbol '" + name + "'");
    Letter l = Letter::make(ab.id(name), false);
    // the "x^-1" form is handled by the exponent path; here x alone
    WordBuilder b(dim);
    b.push_letter(l);
    return b.take();
  }
};

}  // namespace

Word parse_word(const std::string& text, const Alphabet& ab, int dim) {
  WordParser p{Lexer{text}, ab, dim};
  return p.parse();
}

ZVec parse_zvec(const std::string& text, int dim) {
  Lexer lx{text};
  std::vector<Int> coords;
  if (lx.peek() == '(') {
    ++lx.pos;
    coords.push_back(lx.integer());
    while (lx.peek() == ',') {
      ++lx.pos;
      coords.push_back(lx.integer());
    }
    lx.expect(')');
  } else {
    coords.push_back(lx.integer());
  }
  if (!lx.done()) lx.err("unexpected input");
  if (static_cast<int>(coords.size()) != dim)
    fail(ErrKind::Dimension, "vector '" + text + "' has dimension " + std::to_string(coords.size()) +
                                 ", expected " + std::to_string(dim));
  return ZVec(std::move(coords));
}

static void print_tuple(std::string& out, const ZVec& v) {
  out += "(";
  for (int i = 0; i < v.dim(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  out += ")";
}

std::string print_word(const Word& w, const Alphabet& ab) {
  if (w.empty()) return "\xCE\xB5";
  std::string out;
  bool first = true;
  auto sep = [&] {
    if (!first) out += " ";
    first = false;
  };
  for (const Block& b : w.blocks()) {
    if (b.periodic) {
      sep();
      out += "(";
      for (size_t i = 0; i < b.pat.size(); ++i) {
        if (i) out += " ";
        out += ab.spell(b.pat[i]);
      }
      out += ")^";
      print_tuple(out, b.ext);
      continue;
    }
    size_t i = 0;
    while (i < b.pat.size()) {
      size_t j = i;
      while (j < b.pat.size() && b.pat[j] == b.pat[i]) ++j;
      size_t run = j - i;
      Letter l = b.pat[i];
      sep();
      out += ab.name(l.symbol());
      if (l.negative())
        out += "^-" + std::to_string(run);
      else if (run > 1)
        out += "^" + std::to_string(run);
      i = j;
    }
  }
  return out;
}

}  // namespace znt
