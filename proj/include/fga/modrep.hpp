#pragma once

#include "fga/quiver.hpp"
#include "fga/strings.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fga {

// A finite-dimensional right module over the algebra of a folded triple,
// given as one matrix per letter (ordinary arrows first, then crease loops,
// in declaration order). Row vectors act on the right: an element supported
// at vertex v is a row vector of length dims[v], and action[l] has
// dims[source(l)] rows and dims[target(l)] columns.
struct Representation {
  Triple triple;
  std::vector<int> dims;                               // size nv+1, slot 0 unused
  std::vector<Matrix> action;                          // size num_letters()
  std::vector<std::vector<std::string>> basis_labels;  // per vertex; may be empty
  // Set by the band-module constructors: whether the parameter matrix makes
  // the construction an honest band module (see asym_band_module /
  // sym_band_module). Unset for all other constructors.
  std::optional<bool> band_module;

  int dim_at(int v) const { return dims[v]; }
  int total_dim() const;
};

bool same_triple(const Triple& a, const Triple& b);

// Zero module over t.
Representation zero_representation(const Triple& t);

// Checks shapes, zero relations (action(a)*action(b) = 0), crease quadratics
// (action(h)^2 = l1*action(h) + l2*I) and crease invertibility. Returns an
// error description, or nullopt if all invariants hold.
std::optional<std::string> verify_representation(const Representation& m);

Representation direct_sum(const Representation& a, const Representation& b);

// ---------------------------------------------------------------------------
// Module constructors

// Simple module at v: one-dimensional at an ordinary vertex; two-dimensional
// at a crease vertex, where the crease loop acts with its (irreducible)
// quadratic.
Representation simple(const Triple& t, int v);

// String module on the standard subword basis b_0..b_n. Actions: a direct
// symbol moves one step forward, its formal inverse moves one step back, and
// a crease symbol mixes the two neighbouring basis vectors through the crease
// quadratic; everything else acts by zero. Total dimension |w| + 1.
// Throws std::invalid_argument if w is not a string of t.
Representation string_module(const Triple& t, const Word& w);
Representation string_module(const Triple& t, const StringClass& c);

// Band module for an asymmetric band w with parameter (m, phi): m copies of
// the cyclic subword basis b_1..b_n (with b_0 identified with b_n), the
// actions of the string-module rules taken cyclically, and the transition
// into b_r twisted by phi across the copies, where r is the greatest index
// whose symbol is a direct ordinary arrow. Total dimension |w| * m.
// band_module is true iff phi is similar to the companion matrix of a power
// of a single irreducible polynomial p != x (equivalently, (K^m, phi) is an
// indecomposable representation of K[x, x^-1]).
// Throws std::invalid_argument on symmetric w, singular phi, or shape
// mismatch.
Representation asym_band_module(const Triple& t, const Word& w, int m, const Matrix& phi);
Representation asym_band_module(const Triple& t, const BandClass& c, int m, const Matrix& phi);

// A symmetric band written in the standard shape: crease_left, then the half
// half[0..n-1], then crease_right, then the formal inverse of the half in
// reverse. `standard` is the assembled word, a rotation of a crease-flip
// variant of the input.
struct SymBandForm {
  Symbol crease_left;
  Word half;
  Symbol crease_right;
  Word standard;
};

// Deterministic choice: among all members of the band orbit matching the
// shape, the one with the word-order-minimal half, preferring direct crease
// symbols at the two distinguished positions.
// Throws std::invalid_argument if w is not a symmetric band.
SymBandForm decompose_symmetric_band(const Triple& t, const Word& w);

// Quadratic coefficients (m1, m2) satisfied by the crease symbol s: the
// crease data for a direct symbol, and (-l1/l2, 1/l2) for an inverse symbol.
std::pair<Scalar, Scalar> crease_symbol_coeffs(const Triple& t, const Symbol& s);

// The block matrix [[0, m2*I_m], [I_m, m1*I_m]] describing how the left
// crease symbol of the standard form acts on the 2m copies of b_0.
Matrix sym_band_left_block(const Triple& t, const SymBandForm& form, int m);

// Symmetric band module: 2m copies of the half-word basis b_0..b_n. The left
// crease symbol acts on the b_0 copies by sym_band_left_block, the right
// crease symbol acts on the b_n copies by psi, and the interior follows the
// string-module rules copy by copy. psi must be 2m x 2m, invertible, and
// satisfy psi^2 = m1'*psi + m2' for the coefficients of the right crease
// symbol. Total dimension 2m * (n+1).
// band_module is true iff (K^{2m}, H, psi) with H = sym_band_left_block is
// an indecomposable matrix pair (no common nontrivial splitting), decided by
// the Fitting-style search of find_splitting_endo.
// Throws std::invalid_argument on violated preconditions.
Representation sym_band_module(const Triple& t, const Word& w, int m, const Matrix& psi);
Representation sym_band_module(const Triple& t, const BandClass& c, int m, const Matrix& psi);

// ---------------------------------------------------------------------------
// Hom spaces, isomorphism, splitting

// A morphism f: M -> N is a tuple of per-vertex matrices f_v (dims_M[v] rows,
// dims_N[v] columns) with f_{s(l)} * action_N(l) = action_M(l) * f_{t(l)} for
// every letter l.
struct HomSpace {
  std::vector<std::vector<Matrix>> basis;  // each element: one matrix per vertex (index 1..nv)
  int dimension() const { return static_cast<int>(basis.size()); }
};

// Exact solution of the intertwining system.
// Throws std::invalid_argument if the triples differ.
HomSpace hom_space(const Representation& m, const Representation& n);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Undetermined };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Undetermined;
  std::vector<Matrix> witness;  // per-vertex invertible intertwiner when Isomorphic
};

// Searches the hom space for an invertible element: every basis element, a
// bounded seeded pseudo-random sample of small combinations, an exhaustive
// scan over small prime fields, and (over the rationals, hom dimension <= 3)
// a determinant grid dense enough to certify that no invertible combination
// exists. Returns NotIsomorphic only when that is certain; Undetermined when
// the search was inconclusive.
IsoResult is_isomorphic(const Representation& m, const Representation& n,
                        unsigned long long seed = 0);

// Splitting endomorphism search over a spanning set of endomorphisms given as
// total matrices (block-diagonal over vertices, or plain square matrices for
// a matrix-pair problem): tries each basis element, each basis element
// shifted by a root of its characteristic polynomial, and a bounded seeded
// sample of combinations. Returns an endomorphism f with
// 0 < dim ker f^N < N (N = total dimension), if one is found.
std::optional<Matrix> find_splitting_endo(const Field& k, int total,
                                          const std::vector<Matrix>& endo_basis,
                                          unsigned long long seed = 0);

// First nontrivial direct-sum decomposition found by applying
// find_splitting_endo to End(M): M = ker f^N + im f^N as submodules.
std::optional<std::pair<Representation, Representation>> fitting_split(
    const Representation& m, unsigned long long seed = 0);

// True when no splitting endomorphism is found. Exact for "false" (a split is
// exhibited); "true" rests on the search certificate: every basis
// endomorphism is nilpotent or invertible and no root shift or sampled
// combination splits.
bool is_indecomposable(const Representation& m, unsigned long long seed = 0);

// Basis of the commutant {X : X G = G X for all G in gens} of square
// matrices, and the derived indecomposability certificate for matrix pairs.
std::vector<Matrix> matrix_commutant(const Field& k, const std::vector<Matrix>& gens);
bool matrix_pair_indecomposable(const Field& k, const std::vector<Matrix>& gens,
                                unsigned long long seed = 0);

// ---------------------------------------------------------------------------
// Explicit string-module isomorphisms

// Constructive basis change M(w) -> M(w2) when the two words lie in the same
// string orbit: the reversal map for inverses, and the inductive one-position
// crease-flip map otherwise, composed along a path of single flips. The
// result intertwines all letter actions and has invertible vertex blocks
// (both verified). Returns nullopt when the words are not equivalent.
std::optional<std::vector<Matrix>> string_iso(const Triple& t, const Word& w, const Word& w2);

// ---------------------------------------------------------------------------
// Projectives, injectives, biseriality

// Indecomposable projective P(v) as a string module: for ordinary v the two
// maximal direct strings A1, A2 out of v are glued to A2^-1 A1; for crease v
// the unique maximal direct string h p gives p^-1 h p. The generator sits at
// the junction.
struct ProjectiveWord {
  Word word;
  int junction = 0;  // basis index of the generator
};
ProjectiveWord projective_word(const Triple& t, int v);
StringClass projective_as_string(const Triple& t, int v);
Representation projective(const Triple& t, int v);

// Injective I(v): dual of the projective at v over the opposite triple.
Representation injective(const Triple& t, int v);

// Radical-series check that P(v) is biserial: rad P(v) is the sum of the two
// arms of the projective word, each arm is uniserial (every radical layer is
// a single simple), and the arms intersect in zero (or a simple).
struct BiserialReport {
  bool ok = false;
  std::vector<std::string> notes;
};
BiserialReport check_biserial(const Triple& t, int v);

// ---------------------------------------------------------------------------
// Serialization

// {"dims": {"1": ...}, "action": {"a": [["0","1"],...]}, "basis": {...}},
// entries as exact scalar strings. Deterministic key order.
std::string representation_to_json(const Representation& m);
// Rebuilds a representation over t; throws std::runtime_error on malformed
// input or shape mismatch.
Representation representation_from_json(const Triple& t, const std::string& text);

}  // namespace fga
