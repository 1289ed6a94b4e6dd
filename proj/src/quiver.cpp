#include "fga/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fga {

const Crease* Triple::crease_at(int v) const {
  for (const Crease& c : creases)
    if (c.vertex == v) return &c;
  return nullptr;
}

int Triple::crease_index_at(int v) const {
  for (size_t i = 0; i < creases.size(); ++i)
    if (creases[i].vertex == v) return static_cast<int>(i);
  return -1;
}

int Triple::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Triple::in_orel(int a, int b) const {
  return std::find(orel.begin(), orel.end(), std::make_pair(a, b)) != orel.end();
}

std::vector<int> Triple::arrows_from(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].source == v) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Triple::arrows_into(int v) const {
  std::vector<int> out;
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].target == v) out.push_back(static_cast<int>(i));
  return out;
}

int Triple::letter_source(int l) const {
  return letter_is_crease(l) ? creases[l - arrows.size()].vertex : arrows[l].source;
}

int Triple::letter_target(int l) const {
  return letter_is_crease(l) ? creases[l - arrows.size()].vertex : arrows[l].target;
}

const std::string& Triple::letter_name(int l) const {
  return letter_is_crease(l) ? creases[l - arrows.size()].name : arrows[l].name;
}

Triple Triple::opposite() const {
  Triple op = *this;
  for (Arrow& a : op.arrows) std::swap(a.source, a.target);
  op.orel.clear();
  for (auto [a, b] : orel) op.orel.emplace_back(b, a);
  return op;
}

int path_target(const Triple& t, const Path& p) {
  return p.letters.empty() ? p.start : t.letter_target(p.letters.back());
}

std::string path_str(const Triple& t, const Path& p) {
  if (p.stationary()) return "e_" + t.vname(p.start);
  std::string out;
  for (size_t i = 0; i < p.letters.size(); ++i) {
    if (i) out += " ";
    out += t.letter_name(p.letters[i]);
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw std::runtime_error("parse error at line " + std::to_string(line) + ": " + msg);
}

int vertex_by_name(const Triple& t, const std::string& name) {
  for (int v = 1; v <= t.num_vertices; ++v)
    if (t.vertex_names[v] == name) return v;
  return -1;
}

}  // namespace

Triple parse_triple(const std::string& text) {
  Triple t;
  bool field_seen = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::set<std::string> names;
  struct PendingZero {
    std::string a, b;
    int line;
  };
  std::vector<PendingZero> zeros;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "field") {
      std::string f;
      if (!(ls >> f)) parse_fail(lineno, "missing field name");
      if (f == "Q") {
        t.k = Field::rationals();
      } else if (f == "Fp") {
        long p;
        if (!(ls >> p) || p < 2) parse_fail(lineno, "bad prime");
        t.k = Field::prime(p);
      } else {
        parse_fail(lineno, "unknown field " + f);
      }
      field_seen = true;
    } else if (kw == "vertex") {
      std::string vn;
      if (!(ls >> vn)) parse_fail(lineno, "missing vertex name");
      // Integer names double as declaration indices and must stay in order;
      // any other unique token is accepted as a name.
      bool numeric = !vn.empty() && vn.find_first_not_of("0123456789") == std::string::npos;
      if (numeric && vn != std::to_string(t.num_vertices + 1))
        parse_fail(lineno, "vertex ids must be declared 1..n in order");
      for (int v = 1; v <= t.num_vertices; ++v)
        if (t.vertex_names[v] == vn) parse_fail(lineno, "duplicate vertex name " + vn);
      std::string kind;
      bool crease = false;
      if (ls >> kind) {
        if (kind == "crease")
          crease = true;
        else if (kind != "ordinary")
          parse_fail(lineno, "unknown vertex kind " + kind);
      }
      ++t.num_vertices;
      if (t.vertex_names.empty()) t.vertex_names.push_back("");
      t.vertex_names.push_back(vn);
      t.crease_vertex.resize(t.num_vertices + 1, false);
      t.crease_vertex[t.num_vertices] = crease;
    } else if (kw == "arrow") {
      Arrow a;
      std::string src, tgt;
      if (!(ls >> a.name >> src >> tgt)) parse_fail(lineno, "arrow needs name source target");
      if (!names.insert(a.name).second) parse_fail(lineno, "duplicate id " + a.name);
      a.source = vertex_by_name(t, src);
      a.target = vertex_by_name(t, tgt);
      if (a.source < 1 || a.target < 1) parse_fail(lineno, "arrow endpoint not a declared vertex");
      t.arrows.push_back(a);
    } else if (kw == "crease") {
      Crease c;
      std::string vn, l1, l2;
      if (!(ls >> c.name >> vn >> l1 >> l2)) parse_fail(lineno, "crease needs name vertex l1 l2");
      if (!names.insert(c.name).second) parse_fail(lineno, "duplicate id " + c.name);
      c.vertex = vertex_by_name(t, vn);
      if (c.vertex < 1) parse_fail(lineno, "crease vertex not declared");
      if (!t.crease_vertex[c.vertex]) parse_fail(lineno, "crease loop at ordinary vertex");
      if (!field_seen) parse_fail(lineno, "field must be declared before creases");
      if (t.crease_at(c.vertex)) parse_fail(lineno, "duplicate crease loop at vertex");
      c.l1 = Scalar::parse(t.k, l1);
      c.l2 = Scalar::parse(t.k, l2);
      t.creases.push_back(c);
    } else if (kw == "zero") {
      PendingZero z;
      if (!(ls >> z.a >> z.b)) parse_fail(lineno, "zero needs two arrow names");
      z.line = lineno;
      zeros.push_back(z);
    } else {
      parse_fail(lineno, "unknown keyword " + kw);
    }
    std::string extra;
    if (ls >> extra) parse_fail(lineno, "trailing token " + extra);
  }
  if (!field_seen) throw std::runtime_error("parse error: no field line");
  for (const auto& z : zeros) {
    int a = t.arrow_index(z.a), b = t.arrow_index(z.b);
    if (a < 0 || b < 0) parse_fail(z.line, "zero relation must name ordinary arrows");
    t.orel.emplace_back(a, b);
  }
  if (t.vertex_names.empty()) t.vertex_names.push_back("");
  return t;
}

Triple load_triple(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_triple(buf.str());
}

std::string serialize_triple(const Triple& t) {
  std::ostringstream out;
  if (t.k.is_rational())
    out << "field Q\n";
  else
    out << "field Fp " << t.k.p << "\n";
  for (int v = 1; v <= t.num_vertices; ++v)
    out << "vertex " << t.vname(v) << (t.crease_vertex[v] ? " crease" : "") << "\n";
  for (const Arrow& a : t.arrows)
    out << "arrow " << a.name << " " << t.vname(a.source) << " " << t.vname(a.target) << "\n";
  for (const Crease& c : t.creases)
    out << "crease " << c.name << " " << t.vname(c.vertex) << " " << c.l1.str() << " " << c.l2.str()
        << "\n";
  for (auto [a, b] : t.orel) out << "zero " << t.arrows[a].name << " " << t.arrows[b].name << "\n";
  return out.str();
}

bool ValidationReport::axiom_failed(const std::string& axiom) const {
  for (const auto& i : issues)
    if (i.axiom == axiom) return true;
  return false;
}

ValidationReport validate(const Triple& t) {
  ValidationReport rep;
  auto issue = [&](const std::string& axiom, const std::string& detail) {
    rep.issues.push_back({axiom, detail});
  };

  // Structural invariants: one crease loop per crease vertex and none elsewhere.
  for (int v = 1; v <= t.num_vertices; ++v) {
    int count = 0;
    for (const Crease& c : t.creases)
      if (c.vertex == v) ++count;
    if (t.is_crease_vertex(v) && count != 1)
      issue("structure", "crease vertex " + t.vname(v) + " has " + std::to_string(count) + " crease loops");
    if (!t.is_crease_vertex(v) && count != 0)
      issue("structure", "ordinary vertex " + t.vname(v) + " carries a crease loop");
  }

  // FG1: at most two arrows of source v and of target v, crease loops included.
  for (int v = 1; v <= t.num_vertices; ++v) {
    int out = 0, in = 0;
    for (int l = 0; l < t.num_letters(); ++l) {
      if (t.letter_source(l) == v) ++out;
      if (t.letter_target(l) == v) ++in;
    }
    if (out > 2) issue("FG1", "vertex " + t.vname(v) + " has " + std::to_string(out) + " outgoing arrows");
    if (in > 2) issue("FG1", "vertex " + t.vname(v) + " has " + std::to_string(in) + " incoming arrows");
  }

  // FG2/FG3: for ordinary b, count all composable predecessors/successors in
  // Q1 (crease loops included) split by membership in the zero relations.
  auto letter_in_orel = [&](int x, int y) {
    if (t.letter_is_crease(x) || t.letter_is_crease(y)) return false;
    return t.in_orel(x, y);
  };
  for (size_t b = 0; b < t.arrows.size(); ++b) {
    int pred_out = 0, pred_in = 0, succ_out = 0, succ_in = 0;
    for (int l = 0; l < t.num_letters(); ++l) {
      if (t.letter_target(l) == t.arrows[b].source)
        (letter_in_orel(l, static_cast<int>(b)) ? pred_in : pred_out)++;
      if (t.letter_source(l) == t.arrows[b].target)
        (letter_in_orel(static_cast<int>(b), l) ? succ_in : succ_out)++;
    }
    const std::string& n = t.arrows[b].name;
    if (pred_out > 1) issue("FG2", "arrow " + n + " has " + std::to_string(pred_out) + " predecessors outside the relations");
    if (succ_out > 1) issue("FG2", "arrow " + n + " has " + std::to_string(succ_out) + " successors outside the relations");
    if (pred_in > 1) issue("FG3", "arrow " + n + " has " + std::to_string(pred_in) + " predecessors inside the relations");
    if (succ_in > 1) issue("FG3", "arrow " + n + " has " + std::to_string(succ_in) + " successors inside the relations");
  }

  // FG4: every zero relation is a composable pair of ordinary arrows.
  for (auto [a, b] : t.orel) {
    if (t.arrows[a].target != t.arrows[b].source)
      issue("FG4", "relation " + t.arrows[a].name + " " + t.arrows[b].name + " is not composable");
  }

  // FG5: each crease quadratic x^2 - l1 x - l2 must be irreducible.
  for (const Crease& c : t.creases) {
    if (!quadratic_is_irreducible(t.k, c.l1, c.l2))
      issue("FG5", "crease " + c.name + " quadratic x^2 - (" + c.l1.str() + ")x - (" + c.l2.str() +
                       ") is reducible over " + t.k.name());
  }

  // FG6 (consequence): ordinary pairs through a crease vertex lie in the relations.
  for (size_t a = 0; a < t.arrows.size(); ++a)
    for (size_t b = 0; b < t.arrows.size(); ++b)
      if (t.arrows[a].target == t.arrows[b].source && t.is_crease_vertex(t.arrows[a].target) &&
          !t.in_orel(static_cast<int>(a), static_cast<int>(b)))
        rep.fg6_violations.push_back(t.arrows[a].name + " " + t.arrows[b].name);

  return rep;
}

namespace {

bool extension_allowed(const Triple& t, const Path& p, int l) {
  int at = path_target(t, p);
  if (t.letter_source(l) != at) return false;
  if (p.letters.empty()) return true;
  int last = p.letters.back();
  if (t.letter_is_crease(last) && t.letter_is_crease(l)) return false;  // crease square
  if (!t.letter_is_crease(last) && !t.letter_is_crease(l) && t.in_orel(last, l)) return false;
  return true;
}

}  // namespace

std::vector<Path> algebra_basis(const Triple& t) {
  int cap = t.num_letters() * (t.num_vertices + 1) * 4;
  std::vector<Path> basis, frontier;
  for (int v = 1; v <= t.num_vertices; ++v) frontier.push_back(Path{v, {}});
  while (!frontier.empty()) {
    basis.insert(basis.end(), frontier.begin(), frontier.end());
    std::vector<Path> next;
    for (const Path& p : frontier)
      for (int l = 0; l < t.num_letters(); ++l)
        if (extension_allowed(t, p, l)) {
          Path q = p;
          q.letters.push_back(l);
          next.push_back(std::move(q));
        }
    if (!next.empty() && next[0].length() > cap) throw NonFiniteDimensionalError(cap);
    frontier = std::move(next);
  }
  // Breadth-first generation is already length-ordered; settle ties by
  // declaration order of the letter sequences (and start vertex).
  std::stable_sort(basis.begin(), basis.end(), [](const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.letters != b.letters) return a.letters < b.letters;
    return a.start < b.start;
  });
  return basis;
}

std::vector<Path> maximal_paths(const Triple& t) {
  std::vector<Path> basis = algebra_basis(t);
  auto in_basis = [&](const Path& p) {
    return std::find(basis.begin(), basis.end(), p) != basis.end();
  };
  std::vector<Path> out;
  for (const Path& p : basis) {
    bool maximal = true;
    for (int l = 0; l < t.num_letters() && maximal; ++l) {
      if (extension_allowed(t, p, l)) {
        Path q = p;
        q.letters.push_back(l);
        if (in_basis(q)) maximal = false;
      }
      // Left extension: letter l then path p.
      if (maximal && t.letter_target(l) == p.start) {
        Path q{t.letter_source(l), {l}};
        q.letters.insert(q.letters.end(), p.letters.begin(), p.letters.end());
        bool ok = true;
        if (!p.letters.empty()) {
          int first = p.letters.front();
          if (t.letter_is_crease(l) && t.letter_is_crease(first)) ok = false;
          if (!t.letter_is_crease(l) && !t.letter_is_crease(first) && t.in_orel(l, first)) ok = false;
        }
        if (ok && in_basis(q)) maximal = false;
      }
    }
    if (maximal) out.push_back(p);
  }
  return out;
}

}  // namespace fga
