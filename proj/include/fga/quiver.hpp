#pragma once

#include "fga/field.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fga {

// Ordinary arrow. Arrows are indexed by declaration order.
struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

// Crease loop at a crease vertex, with quadratic x^2 - l1 x - l2.
struct Crease {
  std::string name;
  int vertex = 0;
  Scalar l1, l2;
};

// A quiver with zero relations and crease data. A gentle pair is the special
// case with no crease vertices. Vertices are 1..num_vertices.
struct Triple {
  Field k;
  int num_vertices = 0;
  std::vector<std::string> vertex_names;  // size num_vertices + 1, slot 0 unused
  std::vector<bool> crease_vertex;        // size num_vertices + 1
  std::vector<Arrow> arrows;              // ordinary arrows only
  std::vector<Crease> creases;
  std::vector<std::pair<int, int>> orel;  // zero relations: arrow index pair (a, b), path a then b

  bool is_crease_vertex(int v) const { return crease_vertex[v]; }
  const Crease* crease_at(int v) const;
  int crease_index_at(int v) const;  // -1 if none
  int arrow_index(const std::string& name) const;
  bool in_orel(int a, int b) const;
  std::vector<int> arrows_from(int v) const;
  std::vector<int> arrows_into(int v) const;
  const std::string& vname(int v) const { return vertex_names[v]; }

  // Letters unify ordinary arrows and crease loops for path purposes:
  // letter i < arrows.size() is arrows[i]; otherwise creases[i - arrows.size()].
  int num_letters() const { return static_cast<int>(arrows.size() + creases.size()); }
  bool letter_is_crease(int l) const { return l >= static_cast<int>(arrows.size()); }
  int letter_source(int l) const;
  int letter_target(int l) const;
  const std::string& letter_name(int l) const;

  Triple opposite() const;
};

// Path in the quiver; stationary paths have an empty letter list.
struct Path {
  int start = 0;  // source vertex
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool stationary() const { return letters.empty(); }
  bool operator==(const Path&) const = default;
};

int path_target(const Triple& t, const Path& p);
std::string path_str(const Triple& t, const Path& p);  // "e_1" or "h1 a b"

Triple parse_triple(const std::string& text);
Triple load_triple(const std::string& file);
std::string serialize_triple(const Triple& t);

struct ValidationIssue {
  std::string axiom;  // "FG1".."FG5" or "structure"
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> fg6_violations;  // informational: derived axiom
  bool ok() const { return issues.empty(); }
  bool axiom_failed(const std::string& axiom) const;
};

ValidationReport validate(const Triple& t);

struct NonFiniteDimensionalError : std::runtime_error {
  explicit NonFiniteDimensionalError(int cap)
      : std::runtime_error("path extension does not terminate within length cap " +
                           std::to_string(cap)) {}
};

// All paths avoiding zero-relation subpaths and crease-loop squares,
// including stationary paths; ordered by length then lexicographically in
// declaration order. This is a K-basis of the algebra.
std::vector<Path> algebra_basis(const Triple& t);

// Basis paths with no one-letter extension on either side inside the basis.
std::vector<Path> maximal_paths(const Triple& t);

}  // namespace fga
