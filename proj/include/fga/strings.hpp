#pragma once

#include "fga/quiver.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fga {

// A symbol is a letter walked forwards (an arrow or crease loop) or
// backwards (its formal inverse).
struct Symbol {
  int letter = 0;
  bool inverse = false;
  bool operator==(const Symbol&) const = default;
};

// Symbols are ordered by declaration index, walking forwards before
// backwards. Words compare length-first, then symbol-wise.
bool symbol_less(const Symbol& a, const Symbol& b);

// A walk in the quiver: either the simple word e_v (empty symbol list) or a
// nonempty composable symbol sequence.
struct Word {
  int simple_vertex = 0;  // meaningful only when syms is empty
  std::vector<Symbol> syms;

  bool is_simple() const { return syms.empty(); }
  std::size_t length() const { return syms.size(); }
  bool operator==(const Word& o) const {
    if (syms.empty() != o.syms.empty()) return false;
    return syms.empty() ? simple_vertex == o.simple_vertex : syms == o.syms;
  }
};

Word simple_word(int v);
Word word_from_symbols(std::vector<Symbol> syms);

int symbol_source(const Triple& t, const Symbol& s);
int symbol_target(const Triple& t, const Symbol& s);
bool symbol_is_crease(const Triple& t, const Symbol& s);
std::string symbol_str(const Triple& t, const Symbol& s);  // "a" / "a^-1"

bool word_well_formed(const Triple& t, const Word& w);
int word_source(const Triple& t, const Word& w);
int word_target(const Triple& t, const Word& w);
Word word_inverse(const Word& w);
// Concatenation; simple words act as identities. Empty if targets mismatch.
std::optional<Word> word_concat(const Triple& t, const Word& a, const Word& b);
std::string word_str(const Triple& t, const Word& w);  // "e_1" / "a^-1 h1 a b"
// Parses the word_str format; throws std::runtime_error on bad input.
Word parse_word(const Triple& t, const std::string& text);
bool word_less(const Word& a, const Word& b);

// Cancels adjacent mutually-inverse symbol pairs until none remain. A fully
// cancelled word collapses to the simple word at the original source.
Word reduce(const Triple& t, const Word& w);

int crease_count(const Triple& t, const Word& w);

// A word is a string when it is reduced, avoids the zero relations (no
// subword or inverse of a subword is a relation, and crease symbols are
// never adjacent), and touches a crease vertex at an end exactly when the
// word ends in a crease symbol there. Simple words are strings exactly at
// ordinary vertices.
bool is_string(const Triple& t, const Word& w, std::string* why = nullptr);

// A word is a band when it is neither simple nor a single crease symbol, is
// cyclically composable with every power avoiding cancellation and the
// relations, and is not equivalent to a proper power of a shorter word.
bool is_band(const Triple& t, const Word& w, std::string* why = nullptr);

// Equivalence moves: a word may be inverted, each crease symbol may be
// flipped independently, and bands may additionally be rotated.
std::vector<Word> crease_flips(const Triple& t, const Word& w);
Word rotate_word(const Word& w, std::size_t r);
std::vector<Word> string_orbit(const Triple& t, const Word& w);
std::vector<Word> band_orbit(const Triple& t, const Word& w);

bool string_is_direct(const Triple& t, const Word& w);
bool string_is_inverse(const Triple& t, const Word& w);
// Non-simple w with some crease flip equal to its inverse. Simple strings
// are never symmetric.
bool string_is_symmetric(const Triple& t, const Word& w);
// Some crease flip of w is a rotation of its inverse.
bool band_is_symmetric(const Triple& t, const Word& w);
// Odd number of crease symbols.
bool band_odd_parity(const Triple& t, const Word& w);

struct StringClass {
  Word canonical;
  bool symmetric = false;
  bool direct = false;
  bool inverse = false;
};

struct BandClass {
  Word canonical;
  bool symmetric = false;
  bool odd_parity = false;
};

// Minimum of the orbit under word_less, with flags computed on the
// canonical representative (symmetry and parity are orbit invariants).
StringClass canonicalize_string(const Triple& t, const Word& w);
BandClass canonicalize_band(const Triple& t, const Word& w);

struct StringEnumeration {
  std::vector<StringClass> classes;  // ordered by length then canonical word
  bool complete = false;             // true when no walk was cut off by max_len
};

struct BandEnumeration {
  std::vector<BandClass> classes;
  bool complete = false;
};

StringEnumeration enumerate_strings(const Triple& t, std::size_t max_len);
BandEnumeration enumerate_bands(const Triple& t, std::size_t max_len);

// A string ends in a deep if no arrow extends it to a longer string (a
// crease symbol is appended first when the arrow lands on a crease vertex);
// dually for starting in a deep.
bool ends_in_deep(const Triple& t, const Word& w);
bool starts_in_deep(const Triple& t, const Word& w);

}  // namespace fga
