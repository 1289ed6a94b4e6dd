#include "fga/folding.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fga {

namespace {

// The primed copy of a name produced by unfold, and the shared name of a
// two-element orbit when one member is the primed copy of the other.
std::string primed(const std::string& name) { return name + "'"; }

std::string orbit_name(const std::string& a, const std::string& b) {
  if (b == primed(a)) return a;
  if (a == primed(b)) return b;
  return a;
}

Symbol crease_symbol_at(const Triple& folded, int v, bool inverse) {
  int idx = folded.crease_index_at(v);
  if (idx < 0) throw std::logic_error("no crease loop at vertex " + folded.vname(v));
  return Symbol{static_cast<int>(folded.arrows.size()) + idx, inverse};
}

void require_section(const UnfoldingMap& m, const char* who) {
  if (!m.has_section)
    throw std::logic_error(std::string(who) +
                           ": the map carries no section, so word-level folding is unavailable");
}

void require_string(const Triple& t, const Word& w, const char* who) {
  std::string why;
  if (!is_string(t, w, &why))
    throw std::invalid_argument(std::string(who) + ": input is not a string (" + why + ")");
}

void require_band(const Triple& t, const Word& w, const char* who) {
  std::string why;
  if (!is_band(t, w, &why))
    throw std::invalid_argument(std::string(who) + ": input is not a band (" + why + ")");
}

// Halves equal up to the sign of crease symbols.
bool halves_match_up_to_crease_sign(const Triple& folded, const std::vector<Symbol>& syms) {
  std::size_t n = syms.size();
  if (n % 2 != 0) return false;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const Symbol& x = syms[i];
    const Symbol& y = syms[i + n / 2];
    if (x.letter != y.letter) return false;
    if (!folded.letter_is_crease(x.letter) && x.inverse != y.inverse) return false;
  }
  return true;
}

// For an odd-parity band, some rotation projects to a word whose two halves
// agree up to crease signs; return both halves of the first such rotation.
std::optional<std::pair<Word, Word>> odd_split(const UnfoldingMap& m, const Word& w) {
  for (std::size_t r = 0; r < w.length(); ++r) {
    Word k = fold_word(m, rotate_word(w, r));
    if (!halves_match_up_to_crease_sign(m.folded, k.syms)) continue;
    std::size_t h = k.syms.size() / 2;
    return std::make_pair(
        word_from_symbols(std::vector<Symbol>(k.syms.begin(), k.syms.begin() + h)),
        word_from_symbols(std::vector<Symbol>(k.syms.begin() + h, k.syms.end())));
  }
  return std::nullopt;
}

Word flip_crease_signs(const Triple& folded, const Word& w) {
  std::vector<Symbol> syms = w.syms;
  for (Symbol& s : syms)
    if (folded.letter_is_crease(s.letter)) s.inverse = !s.inverse;
  return word_from_symbols(std::move(syms));
}

}  // namespace

bool UnfoldingMap::arrow_in_section(int unfolded_arrow) const {
  if (!has_section) return false;
  int f = pi_arrow[unfolded_arrow];
  return iota_arrow[f] == unfolded_arrow;
}

Symbol UnfoldingMap::g_symbol(const Symbol& s) const {
  return Symbol{g_arrow[s.letter], s.inverse};
}

Word UnfoldingMap::g_word(const Word& w) const {
  if (w.is_simple()) return simple_word(g_vertex[w.simple_vertex]);
  std::vector<Symbol> out;
  out.reserve(w.syms.size());
  for (const Symbol& s : w.syms) out.push_back(g_symbol(s));
  return word_from_symbols(std::move(out));
}

UnfoldingMap unfold(const Triple& t) {
  ValidationReport rep = validate(t);
  if (!rep.ok())
    throw std::invalid_argument("unfold: input triple is invalid (" + rep.issues[0].axiom + ": " +
                                rep.issues[0].detail + ")");
  if (t.creases.empty())
    throw std::invalid_argument("unfold: the triple has no crease vertices to unfold");
  if (!rep.fg6_violations.empty())
    throw std::invalid_argument(
        "unfold: ordinary composition " + rep.fg6_violations[0] +
        " through a crease vertex is not a zero relation, so the double cover is not gentle");

  const int nv = t.num_vertices;
  const int na = static_cast<int>(t.arrows.size());

  UnfoldingMap m;
  m.folded = t;

  Triple& u = m.unfolded;
  u.k = t.k;

  // Unprimed copies keep the folded indices and names; primed copies of the
  // ordinary vertices follow.
  std::vector<int> primed_vertex(nv + 1, 0);
  u.vertex_names.assign(1, "");
  for (int v = 1; v <= nv; ++v) u.vertex_names.push_back(t.vname(v));
  for (int v = 1; v <= nv; ++v)
    if (!t.is_crease_vertex(v)) {
      u.vertex_names.push_back(primed(t.vname(v)));
      primed_vertex[v] = static_cast<int>(u.vertex_names.size()) - 1;
    } else {
      primed_vertex[v] = v;
    }
  u.num_vertices = static_cast<int>(u.vertex_names.size()) - 1;
  u.crease_vertex.assign(u.num_vertices + 1, false);

  for (const Arrow& a : t.arrows) u.arrows.push_back(a);
  for (const Arrow& a : t.arrows)
    u.arrows.push_back(Arrow{primed(a.name), primed_vertex[a.source], primed_vertex[a.target]});

  for (const auto& [a, b] : t.orel) u.orel.emplace_back(a, b);
  for (const auto& [a, b] : t.orel) u.orel.emplace_back(a + na, b + na);

  m.g_vertex.assign(u.num_vertices + 1, 0);
  for (int v = 1; v <= nv; ++v) {
    m.g_vertex[v] = primed_vertex[v];
    m.g_vertex[primed_vertex[v]] = v;
  }
  m.g_arrow.assign(2 * na, 0);
  for (int a = 0; a < na; ++a) {
    m.g_arrow[a] = a + na;
    m.g_arrow[a + na] = a;
  }

  m.pi_vertex.assign(u.num_vertices + 1, 0);
  for (int v = 1; v <= nv; ++v) {
    m.pi_vertex[v] = v;
    m.pi_vertex[primed_vertex[v]] = v;
  }
  m.pi_arrow.assign(2 * na, 0);
  for (int a = 0; a < na; ++a) {
    m.pi_arrow[a] = a;
    m.pi_arrow[a + na] = a;
  }

  m.has_section = true;
  m.iota_vertex.assign(nv + 1, 0);
  for (int v = 1; v <= nv; ++v) m.iota_vertex[v] = v;
  m.iota_arrow.assign(na, 0);
  for (int a = 0; a < na; ++a) m.iota_arrow[a] = a;

  ValidationReport urep = validate(u);
  if (!urep.ok())
    throw std::logic_error("unfold: constructed pair fails validation (" + urep.issues[0].axiom +
                           ": " + urep.issues[0].detail + ")");
  return m;
}

UnfoldingMap fold(const Triple& pair, const std::vector<int>& g_vertex,
                  const std::vector<int>& g_arrow, const std::vector<CreaseSpec>& creases) {
  if (!pair.creases.empty())
    throw std::invalid_argument("fold: the input must be a creaseless pair");
  ValidationReport prep = validate(pair);
  if (!prep.ok())
    throw std::invalid_argument("fold: input pair is invalid (" + prep.issues[0].axiom + ": " +
                                prep.issues[0].detail + ")");

  const int nv = pair.num_vertices;
  const int na = static_cast<int>(pair.arrows.size());
  if (static_cast<int>(g_vertex.size()) != nv + 1)
    throw std::invalid_argument("fold: vertex action has wrong size");
  if (static_cast<int>(g_arrow.size()) != na)
    throw std::invalid_argument("fold: arrow action has wrong size");

  for (int v = 1; v <= nv; ++v) {
    int gv = g_vertex[v];
    if (gv < 1 || gv > nv || g_vertex[gv] != v)
      throw std::invalid_argument("fold: vertex action is not an involution");
  }
  for (int a = 0; a < na; ++a) {
    int ga = g_arrow[a];
    if (ga < 0 || ga >= na || g_arrow[ga] != a)
      throw std::invalid_argument("fold: arrow action is not an involution");
    if (ga == a)
      throw std::invalid_argument("fold: the action fixes arrow " + pair.arrows[a].name +
                                  ", which folding forbids");
    if (pair.arrows[ga].source != g_vertex[pair.arrows[a].source] ||
        pair.arrows[ga].target != g_vertex[pair.arrows[a].target])
      throw std::invalid_argument("fold: the action does not respect the endpoints of arrow " +
                                  pair.arrows[a].name);
  }
  for (const auto& [a, b] : pair.orel)
    if (!pair.in_orel(g_arrow[a], g_arrow[b]))
      throw std::invalid_argument("fold: the zero relation " + pair.arrows[a].name + " " +
                                  pair.arrows[b].name + " is not closed under the action");

  // Vertex orbits, represented by their minimal member, in ascending order.
  std::vector<int> fold_of_vertex(nv + 1, 0);
  Triple folded;
  folded.k = pair.k;
  folded.vertex_names.assign(1, "");
  std::vector<int> fixed_vertices;
  for (int v = 1; v <= nv; ++v) {
    if (g_vertex[v] < v) {
      fold_of_vertex[v] = fold_of_vertex[g_vertex[v]];
      continue;
    }
    if (g_vertex[v] == v) {
      folded.vertex_names.push_back(pair.vname(v));
      fixed_vertices.push_back(v);
    } else {
      folded.vertex_names.push_back(orbit_name(pair.vname(v), pair.vname(g_vertex[v])));
    }
    fold_of_vertex[v] = static_cast<int>(folded.vertex_names.size()) - 1;
  }
  folded.num_vertices = static_cast<int>(folded.vertex_names.size()) - 1;
  folded.crease_vertex.assign(folded.num_vertices + 1, false);
  for (int v : fixed_vertices) folded.crease_vertex[fold_of_vertex[v]] = true;

  std::vector<int> fold_of_arrow(na, -1);
  for (int a = 0; a < na; ++a) {
    if (g_arrow[a] < a) {
      fold_of_arrow[a] = fold_of_arrow[g_arrow[a]];
      continue;
    }
    const Arrow& x = pair.arrows[a];
    folded.arrows.push_back(Arrow{orbit_name(x.name, pair.arrows[g_arrow[a]].name),
                                  fold_of_vertex[x.source], fold_of_vertex[x.target]});
    fold_of_arrow[a] = static_cast<int>(folded.arrows.size()) - 1;
  }

  for (const auto& [a, b] : pair.orel) {
    std::pair<int, int> r{fold_of_arrow[a], fold_of_arrow[b]};
    if (!folded.in_orel(r.first, r.second)) folded.orel.push_back(r);
  }

  // One crease per fixed vertex, attached in ascending vertex order.
  std::map<int, const CreaseSpec*> spec_at;
  for (const CreaseSpec& c : creases) {
    if (c.fixed_vertex < 1 || c.fixed_vertex > nv || g_vertex[c.fixed_vertex] != c.fixed_vertex)
      throw std::invalid_argument("fold: crease coefficients given for a vertex the action moves");
    if (!spec_at.emplace(c.fixed_vertex, &c).second)
      throw std::invalid_argument("fold: duplicate crease coefficients for vertex " +
                                  pair.vname(c.fixed_vertex));
  }
  for (int v : fixed_vertices) {
    auto it = spec_at.find(v);
    if (it == spec_at.end())
      throw std::invalid_argument("fold: fixed vertex " + pair.vname(v) +
                                  " needs crease coefficients");
    const CreaseSpec& c = *it->second;
    folded.creases.push_back(Crease{c.name, fold_of_vertex[v], c.l1, c.l2});
  }

  ValidationReport frep = validate(folded);
  if (!frep.ok())
    throw std::invalid_argument("fold: quotient triple is invalid (" + frep.issues[0].axiom +
                                ": " + frep.issues[0].detail + ")");

  UnfoldingMap m;
  m.folded = std::move(folded);
  m.unfolded = pair;
  m.g_vertex = g_vertex;
  m.g_arrow = g_arrow;
  m.pi_vertex.assign(nv + 1, 0);
  for (int v = 1; v <= nv; ++v) m.pi_vertex[v] = fold_of_vertex[v];
  m.pi_arrow = fold_of_arrow;

  // Section: possible only when every two-element vertex orbit is named
  // {name, name'}; the arrow section member must join the chosen vertex
  // copies and carry the relations.
  m.has_section = true;
  m.iota_vertex.assign(m.folded.num_vertices + 1, 0);
  for (int v = 1; v <= nv && m.has_section; ++v) {
    if (g_vertex[v] < v) continue;
    int fv = fold_of_vertex[v];
    if (g_vertex[v] == v) {
      m.iota_vertex[fv] = v;
    } else {
      const std::string& n1 = pair.vname(v);
      const std::string& n2 = pair.vname(g_vertex[v]);
      if (n2 == primed(n1))
        m.iota_vertex[fv] = v;
      else if (n1 == primed(n2))
        m.iota_vertex[fv] = g_vertex[v];
      else
        m.has_section = false;
    }
  }
  m.iota_arrow.assign(m.folded.arrows.size(), -1);
  for (int a = 0; a < na && m.has_section; ++a) {
    if (g_arrow[a] < a) continue;
    int fa = fold_of_arrow[a];
    const Arrow& want = m.folded.arrows[fa];
    int pick = -1;
    for (int cand : {a, g_arrow[a]})
      if (pair.arrows[cand].source == m.iota_vertex[want.source] &&
          pair.arrows[cand].target == m.iota_vertex[want.target]) {
        pick = cand;
        break;
      }
    if (pick < 0)
      m.has_section = false;
    else
      m.iota_arrow[fa] = pick;
  }
  if (m.has_section)
    for (const auto& [a, b] : m.folded.orel)
      if (!pair.in_orel(m.iota_arrow[a], m.iota_arrow[b])) {
        m.has_section = false;
        break;
      }
  if (!m.has_section) {
    m.iota_vertex.clear();
    m.iota_arrow.clear();
  }
  return m;
}

Word fold_word(const UnfoldingMap& m, const Word& w) {
  require_section(m, "fold_word");
  if (w.is_simple()) return simple_word(m.pi_vertex[w.simple_vertex]);
  const Triple& f = m.folded;
  std::vector<Symbol> out;
  for (const Symbol& s : w.syms) {
    Symbol fs{m.pi_arrow[s.letter], s.inverse};
    if (m.arrow_in_section(s.letter)) {
      out.push_back(fs);
      continue;
    }
    int src = symbol_source(f, fs);
    int tgt = symbol_target(f, fs);
    if (f.is_crease_vertex(src)) out.push_back(crease_symbol_at(f, src, false));
    out.push_back(fs);
    if (f.is_crease_vertex(tgt)) out.push_back(crease_symbol_at(f, tgt, true));
  }
  return word_from_symbols(std::move(out));
}

Word unfold_word(const UnfoldingMap& m, const Word& w) {
  require_section(m, "unfold_word");
  const Triple& f = m.folded;
  if (w.is_simple()) return simple_word(m.iota_vertex[w.simple_vertex]);
  if (w.length() == 1 && symbol_is_crease(f, w.syms[0]))
    return simple_word(m.iota_vertex[symbol_source(f, w.syms[0])]);

  std::vector<Symbol> out;
  int creases_passed = 0;
  for (const Symbol& s : w.syms) {
    if (symbol_is_crease(f, s)) {
      ++creases_passed;
      continue;
    }
    int a = m.iota_arrow[s.letter];
    if (creases_passed % 2 == 1) a = m.g_arrow[a];
    out.push_back(Symbol{a, s.inverse});
  }
  if (out.empty())
    throw std::invalid_argument("unfold_word: the word consists of crease symbols only");
  return word_from_symbols(std::move(out));
}

Word fold_string(const UnfoldingMap& m, const Word& w) {
  require_section(m, "fold_string");
  require_string(m.unfolded, w, "fold_string");
  const Triple& f = m.folded;

  if (w.is_simple()) {
    int fv = m.pi_vertex[w.simple_vertex];
    if (f.is_crease_vertex(fv)) return word_from_symbols({crease_symbol_at(f, fv, false)});
    return simple_word(fv);
  }

  Word k = fold_word(m, w);
  std::vector<Symbol> out = k.syms;
  int sv = m.pi_vertex[word_source(m.unfolded, w)];
  if (f.is_crease_vertex(sv) && m.arrow_in_section(w.syms.front().letter))
    out.insert(out.begin(), crease_symbol_at(f, sv, true));
  int tv = m.pi_vertex[word_target(m.unfolded, w)];
  if (f.is_crease_vertex(tv) && m.arrow_in_section(w.syms.back().letter))
    out.push_back(crease_symbol_at(f, tv, false));

  Word res = word_from_symbols(std::move(out));
  std::string why;
  if (!is_string(f, res, &why))
    throw std::logic_error("fold_string: folded word is not a string (" + why + ")");
  return res;
}

Word unfold_string(const UnfoldingMap& m, const Word& w) {
  require_section(m, "unfold_string");
  require_string(m.folded, w, "unfold_string");
  Word res = unfold_word(m, w);
  std::string why;
  if (!is_string(m.unfolded, res, &why))
    throw std::logic_error("unfold_string: lifted word is not a string (" + why + ")");
  return res;
}

bool unfolded_band_odd_parity(const UnfoldingMap& m, const Word& w) {
  require_section(m, "unfolded_band_odd_parity");
  require_band(m.unfolded, w, "unfolded_band_odd_parity");
  std::size_t n = w.length();
  if (n % 2 != 0) return false;
  for (std::size_t i = 0; i < n / 2; ++i)
    if (!(w.syms[i + n / 2] == m.g_symbol(w.syms[i]))) return false;
  return true;
}

Word fold_band(const UnfoldingMap& m, const Word& w) {
  require_section(m, "fold_band");
  require_band(m.unfolded, w, "fold_band");
  const Triple& f = m.folded;

  if (!unfolded_band_odd_parity(m, w)) {
    Word k = fold_word(m, w);
    std::string why;
    if (!is_band(f, k, &why))
      throw std::logic_error("fold_band: folded word is not a band (" + why + ")");
    return k;
  }

  // Odd parity: the projection consists of two halves equal up to crease
  // signs, and the fold is the first half.
  auto split = odd_split(m, w);
  if (!split)
    throw std::logic_error("fold_band: no rotation splits the projection into matching halves");
  std::string why;
  if (!is_band(f, split->first, &why))
    throw std::logic_error("fold_band: halved word is not a band (" + why + ")");
  return split->first;
}

Word unfold_band(const UnfoldingMap& m, const Word& w) {
  require_section(m, "unfold_band");
  require_band(m.folded, w, "unfold_band");
  Word base = w;
  if (band_odd_parity(m.folded, w)) {
    auto sq = word_concat(m.folded, w, w);
    if (!sq) throw std::logic_error("unfold_band: band does not compose with itself");
    base = *sq;
  }
  Word res = unfold_word(m, base);
  std::string why;
  if (!is_band(m.unfolded, res, &why))
    throw std::logic_error("unfold_band: lifted word is not a band (" + why + ")");
  return res;
}

bool is_Z2_invariant_string(const UnfoldingMap& m, const Word& w) {
  require_section(m, "is_Z2_invariant_string");
  require_string(m.unfolded, w, "is_Z2_invariant_string");
  return canonicalize_string(m.unfolded, m.g_word(w)).canonical ==
         canonicalize_string(m.unfolded, w).canonical;
}

bool is_Z2_invariant_band(const UnfoldingMap& m, const Word& w) {
  require_section(m, "is_Z2_invariant_band");
  require_band(m.unfolded, w, "is_Z2_invariant_band");
  return canonicalize_band(m.unfolded, m.g_word(w)).canonical ==
         canonicalize_band(m.unfolded, w).canonical;
}

std::optional<int> g_fold_inverts_creases(const UnfoldingMap& m, const Word& w) {
  require_section(m, "g_fold_inverts_creases");
  require_band(m.unfolded, w, "g_fold_inverts_creases");

  Word x, y;
  if (unfolded_band_odd_parity(m, w)) {
    // The projection splits as fold(w) followed by fold(g w); the claim is
    // that the second half inverts every crease of the first exactly.
    auto split = odd_split(m, w);
    if (!split) return std::nullopt;
    x = split->first;
    y = split->second;
  } else {
    x = fold_word(m, w);
    y = fold_word(m, m.g_word(w));
  }
  if (x.length() != y.length()) return std::nullopt;
  Word fx = flip_crease_signs(m.folded, x);
  for (std::size_t r = 0; r < fx.length(); ++r)
    if (rotate_word(fx, r) == y) return static_cast<int>(r);
  return std::nullopt;
}

}  // namespace fga
