#pragma once

#include "fga/quiver.hpp"
#include "fga/strings.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fga {

// Ties a triple with creases to its creaseless double cover: the doubled
// quiver, the copy-swapping involution g, the quotient map pi, and (when it
// exists) a section iota selecting one copy of each vertex and arrow.
struct UnfoldingMap {
  Triple folded;
  Triple unfolded;  // gentle pair: no crease vertices

  std::vector<int> g_vertex;  // size nv̂+1, slot 0 unused; involution
  std::vector<int> g_arrow;   // involution on unfolded arrow indices
  std::vector<int> pi_vertex; // unfolded vertex -> folded vertex
  std::vector<int> pi_arrow;  // unfolded arrow -> folded ordinary arrow

  // The section: iota_vertex[v] / iota_arrow[a] give the chosen copy of each
  // folded vertex / ordinary arrow. Empty when has_section is false.
  bool has_section = true;
  std::vector<int> iota_vertex;
  std::vector<int> iota_arrow;

  bool arrow_in_section(int unfolded_arrow) const;
  Symbol g_symbol(const Symbol& s) const;  // swap the copy, keep direction
  Word g_word(const Word& w) const;        // symbol-wise; swaps the vertex
                                           // of a stationary word
};

// Doubles every ordinary vertex, arrow, and zero relation of t and keeps a
// single copy of each crease vertex, producing a gentle pair. The unprimed
// copies reuse t's own indices and names; primed copies (named with a
// trailing apostrophe) are appended, so the section is the identity
// embedding. Throws std::invalid_argument if t has no crease vertices,
// fails validation, or has an ordinary composition through a crease vertex
// that is not a zero relation (the doubled pair would not be gentle).
UnfoldingMap unfold(const Triple& t);

// Coefficients for the crease loop attached to a fixed vertex by fold().
struct CreaseSpec {
  int fixed_vertex = 0;  // vertex of `pair` with g_vertex[v] == v
  std::string name;
  Scalar l1, l2;  // loop satisfies x^2 = l1 x + l2
};

// Quotient of a creaseless pair by an involution: vertex and arrow orbits
// become the vertices and arrows, zero relations descend, and each fixed
// vertex receives a crease loop with the supplied coefficients. Requires a
// valid pair, a genuine involution that respects arrow endpoints, fixes no
// arrow, and preserves the relation set, and exactly one CreaseSpec per
// fixed vertex with an irreducible quadratic; throws std::invalid_argument
// otherwise. The returned map carries a section only when every two-element
// vertex orbit is named {name, name + "'"} and the induced arrow section
// respects the relations; otherwise has_section is false and the word-level
// maps below throw std::logic_error.
UnfoldingMap fold(const Triple& pair, const std::vector<int>& g_vertex,
                  const std::vector<int>& g_arrow,
                  const std::vector<CreaseSpec>& creases);

// Projects a word of the double cover to the folded quiver. Symbols in the
// section project bare; a symbol outside the section additionally acquires
// a direct crease symbol before it when it leaves a folded crease vertex,
// and an inverse one after it when it enters one. Stationary words project
// to the stationary word at the projected vertex.
Word fold_word(const UnfoldingMap& m, const Word& w);

// Lifts a folded word to the double cover: ordinary symbols map through the
// section, swapping to the other copy each time a crease symbol is passed;
// the crease symbols themselves vanish. A stationary word or a lone crease
// symbol lifts to the stationary word at the section copy of its vertex.
Word unfold_word(const UnfoldingMap& m, const Word& w);

// fold_word with the boundary completed so the result is a string: an
// inverse crease symbol is prepended when the word starts at a preimage of
// a crease vertex from inside the section, and a direct one is appended
// dually. A stationary word over a folded crease vertex folds to the crease
// loop string. Requires a string input; throws std::invalid_argument
// otherwise.
Word fold_string(const UnfoldingMap& m, const Word& w);

// unfold_word restricted to strings; the lift of a string is always a
// string of the double cover, and fold_string is a left inverse on classes.
Word unfold_string(const UnfoldingMap& m, const Word& w);

// A band of the double cover has odd parity when its second half is the
// g-image of its first half symbol-by-symbol (the property is independent
// of the chosen rotation or inversion). Folded bands expose their parity
// through band_odd_parity (odd number of crease symbols).
bool unfolded_band_odd_parity(const UnfoldingMap& m, const Word& w);

// Bands fold by projecting; an odd-parity band's projection consists of two
// halves equal up to crease signs, and its fold is one half. Odd folded
// bands lift by unfolding their square, even ones directly. Both require
// band inputs and return band words (not canonicalized).
Word fold_band(const UnfoldingMap& m, const Word& w);
Word unfold_band(const UnfoldingMap& m, const Word& w);

// Whether the g-image of a string/band of the double cover is equivalent to
// the original (compared through canonical class representatives).
bool is_Z2_invariant_string(const UnfoldingMap& m, const Word& w);
bool is_Z2_invariant_band(const UnfoldingMap& m, const Word& w);

// Folding the g-image of a band inverts every crease symbol of the folded
// band, up to rotation. Returns the rotation r with
// rotate_word(creases-inverted fold_band(w), r) == fold_band(g w), or
// nullopt if no rotation matches.
std::optional<int> g_fold_inverts_creases(const UnfoldingMap& m,
                                          const Word& w);

}  // namespace fga
