#include "sclkit/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace sclkit {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 1) throw std::invalid_argument("alphabet rank must be >= 1");
}

std::string Alphabet::letter_name(Letter l) const {
  if (!contains(l)) throw std::invalid_argument("letter outside alphabet");
  int idx = std::abs(l);
  if (rank_ <= 26) {
    char base = static_cast<char>((l > 0 ? 'a' : 'A') + idx - 1);
    return std::string(1, base);
  }
  std::string s = "x" + std::to_string(idx);
  if (l < 0) s += "^-1";
  return s;
}

namespace kernel {

int reduce_into(const Letter* src, int n, Letter* dst) {
  int top = 0;
  for (int i = 0; i < n; ++i) {
    Letter l = src[i];
    if (top > 0 && dst[top - 1] == -l) {
      --top;
    } else {
      dst[top++] = l;
    }
  }
  return top;
}

int concat_reduce(const Letter* a, int na, const Letter* b, int nb, Letter* dst) {
  int cancel = 0;
  while (cancel < na && cancel < nb && a[na - 1 - cancel] == -b[cancel]) ++cancel;
  int len = 0;
  for (int i = 0; i < na - cancel; ++i) dst[len++] = a[i];
  for (int i = cancel; i < nb; ++i) dst[len++] = b[i];
  return len;
}

int count_occurrences(const Letter* w, int nw, const Letter* g, int ng) {
  if (nw == 0 || nw > ng) return 0;
  int count = 0;
  for (int i = 0; i + nw <= ng; ++i) {
    int j = 0;
    while (j < nw && g[i + j] == w[j]) ++j;
    if (j == nw) ++count;
  }
  return count;
}

}  // namespace kernel

bool is_reduced(std::span<const Letter> letters) {
  for (size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i] == -letters[i + 1]) return false;
  return true;
}

Word Word::reduce(const Alphabet& alphabet, std::span<const Letter> raw) {
  for (Letter l : raw)
    if (!alphabet.contains(l)) throw std::invalid_argument("letter outside alphabet");
  std::vector<Letter> buf(raw.size());
  int len = kernel::reduce_into(raw.data(), static_cast<int>(raw.size()), buf.data());
  buf.resize(static_cast<size_t>(len));
  Word w;
  w.letters_ = std::move(buf);
  return w;
}

Word Word::reduce(const Alphabet& alphabet, std::initializer_list<Letter> raw) {
  return reduce(alphabet, std::span<const Letter>(raw.begin(), raw.size()));
}

Word Word::from_reduced(std::vector<Letter> letters) {
  if (!is_reduced(letters)) throw std::invalid_argument("sequence is not freely reduced");
  Word w;
  w.letters_ = std::move(letters);
  return w;
}

bool Word::operator<(const Word& other) const {
  if (letters_.size() != other.letters_.size()) return letters_.size() < other.letters_.size();
  return std::lexicographical_compare(letters_.begin(), letters_.end(), other.letters_.begin(),
                                      other.letters_.end());
}

MulResult multiply_full(const Word& g, const Word& h) {
  const auto& a = g.letters();
  const auto& b = h.letters();
  int cancel = 0;
  int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  while (cancel < na && cancel < nb && a[static_cast<size_t>(na - 1 - cancel)] == -b[static_cast<size_t>(cancel)])
    ++cancel;
  std::vector<Letter> out;
  out.reserve(static_cast<size_t>(na + nb - 2 * cancel));
  out.insert(out.end(), a.begin(), a.end() - cancel);
  out.insert(out.end(), b.begin() + cancel, b.end());
  return {Word::from_reduced(std::move(out)), cancel};
}

Word multiply(const Word& g, const Word& h) { return multiply_full(g, h).product; }

Word inverse(const Word& g) {
  std::vector<Letter> out(g.letters().rbegin(), g.letters().rend());
  for (Letter& l : out) l = -l;
  return Word::from_reduced(std::move(out));
}

Word commutator(const Word& g, const Word& x) {
  return multiply(multiply(g, x), multiply(inverse(g), inverse(x)));
}

Word power(const Word& g, long n) {
  if (n == 0) return Word();
  if (n < 0) return inverse(power(g, -n));
  // Split off the conjugator so the middle concatenation needs no scanning.
  CyclicReduction cr = cyclic_reduce(g);
  std::vector<Letter> out;
  const auto& u = cr.conjugator.letters();
  const auto& c = cr.core.letters();
  out.reserve(u.size() * 2 + c.size() * static_cast<size_t>(n));
  out.insert(out.end(), u.begin(), u.end());
  for (long i = 0; i < n; ++i) out.insert(out.end(), c.begin(), c.end());
  Word ui = inverse(cr.conjugator);
  out.insert(out.end(), ui.letters().begin(), ui.letters().end());
  std::vector<Letter> reduced(out.size());
  int len = kernel::reduce_into(out.data(), static_cast<int>(out.size()), reduced.data());
  reduced.resize(static_cast<size_t>(len));
  return Word::from_reduced(std::move(reduced));
}

Word conjugate(const Word& u, const Word& g) { return multiply(multiply(u, g), inverse(u)); }

CyclicReduction cyclic_reduce(const Word& g) {
  const auto& l = g.letters();
  int lo = 0, hi = static_cast<int>(l.size());
  while (hi - lo >= 2 && l[static_cast<size_t>(lo)] == -l[static_cast<size_t>(hi - 1)]) {
    ++lo;
    --hi;
  }
  Word core = Word::from_reduced(std::vector<Letter>(l.begin() + lo, l.begin() + hi));
  Word conj = Word::from_reduced(std::vector<Letter>(l.begin(), l.begin() + lo));
  return {core, conj};
}

bool is_cyclically_reduced(const Word& g) {
  if (g.length() < 2) return true;
  return g.letters().front() != -g.letters().back();
}

std::vector<long> abelianization(const Alphabet& alphabet, const Word& g) {
  std::vector<long> e(static_cast<size_t>(alphabet.rank()), 0);
  for (Letter l : g.letters()) e[static_cast<size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
  return e;
}

Word conjugacy_key(const Word& g) {
  Word core = cyclic_reduce(g).core;
  const auto& c = core.letters();
  int n = static_cast<int>(c.size());
  if (n <= 1) return core;
  std::vector<Letter> best(c.begin(), c.end());
  std::vector<Letter> rot(c.begin(), c.end());
  for (int s = 1; s < n; ++s) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end())) best = rot;
  }
  return Word::from_reduced(std::move(best));
}

namespace {

struct Parser {
  const Alphabet& alphabet;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("word parse error at position " + std::to_string(pos) + ": " + msg);
  }

  long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail("expected integer");
    return std::stol(text.substr(start, pos - start));
  }

  // atom := letter | xN | '(' expr ')' | '[' expr ',' expr ']' | 'e'
  Word parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Word w = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return w;
    }
    if (c == '[') {
      ++pos;
      Word u = parse_expr();
      if (peek() != ',') fail("expected ',' in commutator");
      ++pos;
      Word v = parse_expr();
      if (peek() != ']') fail("expected ']'");
      ++pos;
      return commutator(u, v);
    }
    if (c == 'x' && pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      long idx = parse_int();
      if (idx < 1 || idx > alphabet.rank()) fail("generator index out of range");
      return Word::from_reduced({static_cast<Letter>(idx)});
    }
    if (c == 'e' && alphabet.rank() < 5) {  // 'e' is a generator once rank >= 5
      ++pos;
      return Word();
    }
    if (c >= 'a' && c <= 'z') {
      int idx = c - 'a' + 1;
      if (idx > alphabet.rank()) fail(std::string("generator '") + c + "' outside alphabet");
      ++pos;
      return Word::from_reduced({static_cast<Letter>(idx)});
    }
    if (c >= 'A' && c <= 'Z') {
      int idx = c - 'A' + 1;
      if (idx > alphabet.rank()) fail(std::string("generator '") + c + "' outside alphabet");
      ++pos;
      return Word::from_reduced({static_cast<Letter>(-idx)});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // expr := (atom ['^' int])*
  Word parse_expr() {
    Word acc;
    while (!eof()) {
      char c = peek();
      if (c == ')' || c == ']' || c == ',') break;
      Word atom = parse_atom();
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        long n = parse_int();
        atom = power(atom, n);
      }
      acc = multiply(acc, atom);
    }
    return acc;
  }
};

}  // namespace

Word parse_word(const Alphabet& alphabet, const std::string& text) {
  Parser p{alphabet, text};
  Word w = p.parse_expr();
  if (!p.eof()) p.fail("trailing input");
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& g) {
  if (g.empty()) return "e";
  std::string out;
  const auto& l = g.letters();
  for (size_t i = 0; i < l.size();) {
    size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    size_t run = j - i;
    if (alphabet.rank() <= 26) {
      out += alphabet.letter_name(l[i]);
      if (run > 1) out += "^" + std::to_string(run);
    } else {
      out += "x" + std::to_string(std::abs(l[i]));
      long e = static_cast<long>(run) * (l[i] > 0 ? 1 : -1);
      if (e != 1) out += "^" + std::to_string(e);
    }
    i = j;
  }
  return out;
}

std::vector<Word> enumerate_words(const Alphabet& alphabet, int max_len) {
  // Ascending letter order so each length block comes out sorted under
  // Word::operator<.
  std::vector<Letter> order;
  for (int i = alphabet.rank(); i >= 1; --i) order.push_back(static_cast<Letter>(-i));
  for (int i = 1; i <= alphabet.rank(); ++i) order.push_back(static_cast<Letter>(i));
  std::vector<Word> out;
  out.emplace_back();
  std::vector<Word> frontier = {Word()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (Letter l : order) {
        if (!w.empty() && w.letters().back() == -l) continue;
        std::vector<Letter> v = w.letters();
        v.push_back(l);
        next.push_back(Word::from_reduced(std::move(v)));
      }
    }
    for (const Word& w : next) out.push_back(w);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace sclkit
