#include "fga/strings.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fga {

namespace {

// Strict weak order for deduplication containers.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

std::string bad_word(const std::string& what) { return "bad word: " + what; }

}  // namespace

bool symbol_less(const Symbol& a, const Symbol& b) {
  if (a.letter != b.letter) return a.letter < b.letter;
  return a.inverse < b.inverse;
}

Word simple_word(int v) {
  Word w;
  w.simple_vertex = v;
  return w;
}

Word word_from_symbols(std::vector<Symbol> syms) {
  Word w;
  w.syms = std::move(syms);
  return w;
}

int symbol_source(const Triple& t, const Symbol& s) {
  return s.inverse ? t.letter_target(s.letter) : t.letter_source(s.letter);
}

int symbol_target(const Triple& t, const Symbol& s) {
  return s.inverse ? t.letter_source(s.letter) : t.letter_target(s.letter);
}

bool symbol_is_crease(const Triple& t, const Symbol& s) { return t.letter_is_crease(s.letter); }

std::string symbol_str(const Triple& t, const Symbol& s) {
  return t.letter_name(s.letter) + (s.inverse ? "^-1" : "");
}

bool word_well_formed(const Triple& t, const Word& w) {
  if (w.is_simple()) return w.simple_vertex >= 1 && w.simple_vertex <= t.num_vertices;
  for (const Symbol& s : w.syms)
    if (s.letter < 0 || s.letter >= t.num_letters()) return false;
  for (std::size_t i = 0; i + 1 < w.syms.size(); ++i)
    if (symbol_target(t, w.syms[i]) != symbol_source(t, w.syms[i + 1])) return false;
  return true;
}

int word_source(const Triple& t, const Word& w) {
  return w.is_simple() ? w.simple_vertex : symbol_source(t, w.syms.front());
}

int word_target(const Triple& t, const Word& w) {
  return w.is_simple() ? w.simple_vertex : symbol_target(t, w.syms.back());
}

Word word_inverse(const Word& w) {
  Word r = w;
  std::reverse(r.syms.begin(), r.syms.end());
  for (Symbol& s : r.syms) s.inverse = !s.inverse;
  return r;
}

std::optional<Word> word_concat(const Triple& t, const Word& a, const Word& b) {
  if (word_target(t, a) != word_source(t, b)) return std::nullopt;
  if (a.is_simple()) return b;
  if (b.is_simple()) return a;
  Word r = a;
  r.syms.insert(r.syms.end(), b.syms.begin(), b.syms.end());
  return r;
}

std::string word_str(const Triple& t, const Word& w) {
  if (w.is_simple()) return "e_" + t.vname(w.simple_vertex);
  std::string out;
  for (std::size_t i = 0; i < w.syms.size(); ++i) {
    if (i) out += ' ';
    out += symbol_str(t, w.syms[i]);
  }
  return out;
}

Word parse_word(const Triple& t, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw std::runtime_error(bad_word("empty input"));
  if (tokens[0].rfind("e_", 0) == 0) {
    if (tokens.size() != 1) throw std::runtime_error(bad_word("simple word with trailing symbols"));
    const std::string vn = tokens[0].substr(2);
    for (int v = 1; v <= t.num_vertices; ++v)
      if (t.vname(v) == vn) return simple_word(v);
    throw std::runtime_error(bad_word("unknown vertex " + vn));
  }
  std::vector<Symbol> syms;
  for (const std::string& tok : tokens) {
    Symbol s;
    std::string name = tok;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
      s.inverse = true;
      name = name.substr(0, name.size() - 3);
    }
    s.letter = -1;
    for (int l = 0; l < t.num_letters(); ++l)
      if (t.letter_name(l) == name) s.letter = l;
    if (s.letter < 0) throw std::runtime_error(bad_word("unknown symbol " + name));
    syms.push_back(s);
  }
  Word w = word_from_symbols(std::move(syms));
  if (!word_well_formed(t, w)) throw std::runtime_error(bad_word("symbols do not compose"));
  return w;
}

bool word_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.is_simple()) return a.simple_vertex < b.simple_vertex;
  return std::lexicographical_compare(a.syms.begin(), a.syms.end(), b.syms.begin(), b.syms.end(),
                                      symbol_less);
}

Word reduce(const Triple& t, const Word& w) {
  if (w.is_simple()) return w;
  const int src = word_source(t, w);
  std::vector<Symbol> stack;
  for (const Symbol& s : w.syms) {
    if (!stack.empty() && stack.back().letter == s.letter && stack.back().inverse != s.inverse)
      stack.pop_back();
    else
      stack.push_back(s);
  }
  if (stack.empty()) return simple_word(src);
  return word_from_symbols(std::move(stack));
}

int crease_count(const Triple& t, const Word& w) {
  int c = 0;
  for (const Symbol& s : w.syms) c += symbol_is_crease(t, s) ? 1 : 0;
  return c;
}

namespace {

// Checks the length-two conditions on an adjacent symbol pair: no
// cancellation, no relation (forwards or backwards), no adjacent crease
// symbols (a crease power in disguise).
bool pair_violation(const Triple& t, const Symbol& a, const Symbol& b, std::string* why) {
  if (a.letter == b.letter && a.inverse != b.inverse) {
    if (why) *why = "not reduced: " + symbol_str(t, a) + " " + symbol_str(t, b);
    return true;
  }
  const bool ac = t.letter_is_crease(a.letter);
  const bool bc = t.letter_is_crease(b.letter);
  if (ac && bc) {
    if (why) *why = "crease power: " + symbol_str(t, a) + " " + symbol_str(t, b);
    return true;
  }
  if (!ac && !bc) {
    if (!a.inverse && !b.inverse && t.in_orel(a.letter, b.letter)) {
      if (why) *why = "relation subword: " + symbol_str(t, a) + " " + symbol_str(t, b);
      return true;
    }
    if (a.inverse && b.inverse && t.in_orel(b.letter, a.letter)) {
      if (why) *why = "inverse relation subword: " + symbol_str(t, a) + " " + symbol_str(t, b);
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_string(const Triple& t, const Word& w, std::string* why) {
  if (!word_well_formed(t, w)) {
    if (why) *why = "not a word: symbols do not compose";
    return false;
  }
  if (w.is_simple()) {
    if (t.is_crease_vertex(w.simple_vertex)) {
      if (why) *why = "boundary: simple word at a crease vertex";
      return false;
    }
    return true;
  }
  for (std::size_t i = 0; i + 1 < w.syms.size(); ++i)
    if (pair_violation(t, w.syms[i], w.syms[i + 1], why)) return false;
  const bool start_crease = symbol_is_crease(t, w.syms.front());
  if (t.is_crease_vertex(word_source(t, w)) != start_crease) {
    if (why) *why = "boundary: start of word does not match its vertex kind";
    return false;
  }
  const bool end_crease = symbol_is_crease(t, w.syms.back());
  if (t.is_crease_vertex(word_target(t, w)) != end_crease) {
    if (why) *why = "boundary: end of word does not match its vertex kind";
    return false;
  }
  return true;
}

std::vector<Word> crease_flips(const Triple& t, const Word& w) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < w.syms.size(); ++i)
    if (symbol_is_crease(t, w.syms[i])) pos.push_back(i);
  std::vector<Word> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pos.size()); ++mask) {
    Word v = w;
    for (std::size_t j = 0; j < pos.size(); ++j)
      if (mask & (std::size_t{1} << j)) v.syms[pos[j]].inverse = !v.syms[pos[j]].inverse;
    out.push_back(std::move(v));
  }
  return out;
}

Word rotate_word(const Word& w, std::size_t r) {
  if (w.is_simple() || r == 0) return w;
  r %= w.syms.size();
  Word v = w;
  std::rotate(v.syms.begin(), v.syms.begin() + static_cast<std::ptrdiff_t>(r), v.syms.end());
  return v;
}

std::vector<Word> string_orbit(const Triple& t, const Word& w) {
  std::vector<Word> out;
  for (const Word& base : {w, word_inverse(w)})
    for (Word& f : crease_flips(t, base)) out.push_back(std::move(f));
  return out;
}

std::vector<Word> band_orbit(const Triple& t, const Word& w) {
  std::vector<Word> out;
  for (const Word& base : {w, word_inverse(w)})
    for (std::size_t r = 0; r < std::max<std::size_t>(base.length(), 1); ++r)
      for (Word& f : crease_flips(t, rotate_word(base, r))) out.push_back(std::move(f));
  return out;
}

bool is_band(const Triple& t, const Word& w, std::string* why) {
  if (!word_well_formed(t, w)) {
    if (why) *why = "not a word: symbols do not compose";
    return false;
  }
  if (w.is_simple()) {
    if (why) *why = "simple words are not bands";
    return false;
  }
  if (w.length() == 1 && symbol_is_crease(t, w.syms[0])) {
    if (why) *why = "a lone crease symbol is not a band";
    return false;
  }
  if (word_source(t, w) != word_target(t, w)) {
    if (why) *why = "not cyclic: endpoints differ";
    return false;
  }
  const std::size_t n = w.length();
  for (std::size_t i = 0; i < n; ++i)
    if (pair_violation(t, w.syms[i], w.syms[(i + 1) % n], why)) return false;
  for (const Word& v : band_orbit(t, w)) {
    for (std::size_t d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) periodic = v.syms[i] == v.syms[i % d];
      if (periodic) {
        if (why) *why = "power of the shorter word " +
                        word_str(t, word_from_symbols({v.syms.begin(), v.syms.begin() + static_cast<std::ptrdiff_t>(d)}));
        return false;
      }
    }
  }
  return true;
}

bool string_is_direct(const Triple& t, const Word& w) {
  for (const Symbol& s : w.syms)
    if (!symbol_is_crease(t, s) && s.inverse) return false;
  return true;
}

bool string_is_inverse(const Triple& t, const Word& w) {
  for (const Symbol& s : w.syms)
    if (!symbol_is_crease(t, s) && !s.inverse) return false;
  return true;
}

bool string_is_symmetric(const Triple& t, const Word& w) {
  if (w.is_simple()) return false;
  const Word inv = word_inverse(w);
  for (const Word& f : crease_flips(t, w))
    if (f == inv) return true;
  return false;
}

bool band_is_symmetric(const Triple& t, const Word& w) {
  if (w.is_simple()) return false;
  std::set<Word, WordLess> flips;
  for (Word& f : crease_flips(t, w)) flips.insert(std::move(f));
  const Word inv = word_inverse(w);
  for (std::size_t r = 0; r < w.length(); ++r)
    if (flips.count(rotate_word(inv, r))) return true;
  return false;
}

bool band_odd_parity(const Triple& t, const Word& w) { return crease_count(t, w) % 2 == 1; }

StringClass canonicalize_string(const Triple& t, const Word& w) {
  StringClass cls;
  cls.canonical = w;
  for (const Word& v : string_orbit(t, w))
    if (word_less(v, cls.canonical)) cls.canonical = v;
  cls.symmetric = string_is_symmetric(t, cls.canonical);
  cls.direct = string_is_direct(t, cls.canonical);
  cls.inverse = string_is_inverse(t, cls.canonical);
  return cls;
}

BandClass canonicalize_band(const Triple& t, const Word& w) {
  BandClass cls;
  cls.canonical = w;
  for (const Word& v : band_orbit(t, w))
    if (word_less(v, cls.canonical)) cls.canonical = v;
  cls.symmetric = band_is_symmetric(t, cls.canonical);
  cls.odd_parity = band_odd_parity(t, cls.canonical);
  return cls;
}

namespace {

// Symbols leaving a vertex, in declaration order, walking forwards first.
std::vector<Symbol> symbols_from(const Triple& t, int v) {
  std::vector<Symbol> out;
  for (int l = 0; l < t.num_letters(); ++l) {
    if (t.letter_source(l) == v) out.push_back({l, false});
    if (t.letter_target(l) == v) out.push_back({l, true});
  }
  std::sort(out.begin(), out.end(), symbol_less);
  return out;
}

std::vector<Symbol> legal_extensions(const Triple& t, const Word& w) {
  std::vector<Symbol> out;
  for (const Symbol& s : symbols_from(t, word_target(t, w)))
    if (w.is_simple() || !pair_violation(t, w.syms.back(), s, nullptr)) out.push_back(s);
  return out;
}

}  // namespace

StringEnumeration enumerate_strings(const Triple& t, std::size_t max_len) {
  StringEnumeration result;
  result.complete = true;
  std::set<Word, WordLess> seen;
  auto record = [&](const Word& w) {
    StringClass cls = canonicalize_string(t, w);
    if (seen.insert(cls.canonical).second) result.classes.push_back(std::move(cls));
  };

  for (int v = 1; v <= t.num_vertices; ++v)
    if (!t.is_crease_vertex(v)) record(simple_word(v));

  std::vector<Symbol> prefix;
  auto dfs = [&](auto&& self) -> void {
    if (prefix.size() > max_len) {
      // Every relation-free walk completes to a string of the same length
      // or one longer, so cutting a walk here means strings were missed.
      result.complete = false;
      return;
    }
    Word w = word_from_symbols(prefix);
    if (is_string(t, w)) record(w);
    for (const Symbol& s : legal_extensions(t, w)) {
      prefix.push_back(s);
      self(self);
      prefix.pop_back();
    }
  };

  for (int v = 1; v <= t.num_vertices; ++v) {
    for (const Symbol& s : symbols_from(t, v)) {
      // The start of a string is a crease symbol exactly at crease vertices.
      if (t.is_crease_vertex(v) != symbol_is_crease(t, s)) continue;
      prefix = {s};
      dfs(dfs);
    }
  }

  std::sort(result.classes.begin(), result.classes.end(),
            [](const StringClass& a, const StringClass& b) { return word_less(a.canonical, b.canonical); });
  return result;
}

BandEnumeration enumerate_bands(const Triple& t, std::size_t max_len) {
  BandEnumeration result;
  result.complete = true;
  std::set<Word, WordLess> seen;
  auto record = [&](const Word& w) {
    BandClass cls = canonicalize_band(t, w);
    if (seen.insert(cls.canonical).second) result.classes.push_back(std::move(cls));
  };

  std::vector<Symbol> prefix;
  auto dfs = [&](auto&& self, int start_vertex) -> void {
    if (prefix.size() > max_len) {
      result.complete = false;
      return;
    }
    Word w = word_from_symbols(prefix);
    if (word_target(t, w) == start_vertex && is_band(t, w)) record(w);
    for (const Symbol& s : legal_extensions(t, w)) {
      prefix.push_back(s);
      self(self, start_vertex);
      prefix.pop_back();
    }
  };

  for (int v = 1; v <= t.num_vertices; ++v) {
    for (const Symbol& s : symbols_from(t, v)) {
      prefix = {s};
      dfs(dfs, v);
    }
  }

  std::sort(result.classes.begin(), result.classes.end(),
            [](const BandClass& a, const BandClass& b) { return word_less(a.canonical, b.canonical); });
  return result;
}

bool ends_in_deep(const Triple& t, const Word& w) {
  const int v = word_target(t, w);
  for (std::size_t a = 0; a < t.arrows.size(); ++a) {
    if (t.arrows[a].source != v) continue;
    std::vector<Symbol> tail = {{static_cast<int>(a), false}};
    if (t.is_crease_vertex(t.arrows[a].target))
      tail.push_back(
          {static_cast<int>(t.arrows.size()) + t.crease_index_at(t.arrows[a].target), false});
    auto cand = word_concat(t, w, word_from_symbols(tail));
    if (cand && is_string(t, *cand)) return false;
  }
  return true;
}

bool starts_in_deep(const Triple& t, const Word& w) {
  const int v = word_source(t, w);
  for (std::size_t a = 0; a < t.arrows.size(); ++a) {
    if (t.arrows[a].source != v) continue;
    std::vector<Symbol> head = {{static_cast<int>(a), true}};
    if (t.is_crease_vertex(t.arrows[a].target))
      head.insert(head.begin(),
                  {static_cast<int>(t.arrows.size()) + t.crease_index_at(t.arrows[a].target), false});
    auto cand = word_concat(t, word_from_symbols(head), w);
    if (cand && is_string(t, *cand)) return false;
  }
  return true;
}

}  // namespace fga
