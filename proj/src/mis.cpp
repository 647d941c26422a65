#include "rydfact/mis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>

namespace rydfact {

std::string VertexLabel::name() const {
  if (wire) return "w^(" + std::to_string(duplicate) + ")";
  return (negated ? "~" : "") + var.name() + "^(" + std::to_string(duplicate) + ")";
}

VertexLabel VertexLabel::parse(std::string_view text) {
  const auto open = text.rfind("^(");
  if (open == std::string_view::npos || text.back() != ')')
    throw Error(ErrorKind::parse_error, "bad vertex label '" + std::string(text) + "'");
  VertexLabel out;
  const std::string idx(text.substr(open + 2, text.size() - open - 3));
  try {
    out.duplicate = std::stoi(idx);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse_error, "bad vertex label '" + std::string(text) + "'");
  }
  const auto head = text.substr(0, open);
  if (head == "w") {
    out.wire = true;
    return out;
  }
  const Literal l = Literal::parse(head);
  out.var = l.var;
  out.negated = l.negated;
  return out;
}

bool MisGraph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), Edge{u, v});
}

void MisGraph::add_edge(int u, int v) {
  if (u == v) throw Error(ErrorKind::invalid_argument, "self loop");
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
  if (it == edges.end() || *it != Edge{u, v}) edges.insert(it, {u, v});
}

void MisGraph::remove_edge(int u, int v) {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
  if (it == edges.end() || *it != Edge{u, v})
    throw Error(ErrorKind::missing_edge, vertices[u].name() + " -- " + vertices[v].name());
  edges.erase(it);
}

int MisGraph::index_of(std::string_view name) const {
  for (int k = 0; k < size(); ++k)
    if (vertices[k].name() == name) return k;
  return -1;
}

std::vector<std::vector<int>> MisGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertices.size());
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

int MisGraph::wire_atom_count() const {
  return static_cast<int>(std::count_if(vertices.begin(), vertices.end(), [](const VertexLabel& l) { return l.wire; }));
}

int MisGraph::wire_offset() const {
  int s = 0;
  for (const auto& w : wires) s += w.m();
  return s;
}

MisGraph graph_from_cnf(const CnfFormula& f, bool strict_units) {
  std::vector<Clause> gadgets;
  if (strict_units)
    for (const auto& u : f.units) gadgets.push_back({u});
  for (const auto& c : f.clauses) {
    if (c.size() > 3)
      throw Error(ErrorKind::clause_too_large, clause_to_string(c) + " has more than 3 literals");
    if (c.empty()) throw Error(ErrorKind::invalid_argument, "formula contains the empty clause");
    gadgets.push_back(c);
  }
  MisGraph g;
  std::map<Literal, int> seen;
  for (std::size_t ci = 0; ci < gadgets.size(); ++ci) {
    const int first = g.size();
    for (const auto& l : gadgets[ci]) {
      VertexLabel v;
      v.var = l.var;
      v.negated = l.negated;
      v.duplicate = ++seen[l];
      v.clause = static_cast<int>(ci);
      g.vertices.push_back(v);
    }
    for (int a = first; a < g.size(); ++a)
      for (int b = a + 1; b < g.size(); ++b) g.add_edge(a, b);
  }
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b)
      if (g.vertices[a].var == g.vertices[b].var && g.vertices[a].negated != g.vertices[b].negated)
        g.add_edge(a, b);
  g.clause_count = static_cast<int>(gadgets.size());
  if (!strict_units) g.units = f.units;
  return g;
}

MisGraph expand_wires(const MisGraph& g, const std::vector<Edge>& edges, const std::vector<int>& interior) {
  if (edges.size() != interior.size())
    throw Error(ErrorKind::length_mismatch, "one interior length is needed per wired edge");
  MisGraph out = g;
  int next = 0;
  for (const auto& v : g.vertices)
    if (v.wire) next = std::max(next, v.duplicate);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const int len = interior[k];
    if (len < 2 || len % 2)
      throw Error(ErrorKind::odd_wire_length, "wire interior must be even and >= 2, got " + std::to_string(len));
    auto [u, v] = edges[k];
    if (u < 0 || v < 0 || u >= out.size() || v >= out.size() || !out.has_edge(u, v))
      throw Error(ErrorKind::missing_edge, "cannot wire a non-edge");
    out.remove_edge(u, v);
    WireSpec w{u, v, {}};
    int prev = u;
    for (int s = 0; s < len; ++s) {
      VertexLabel atom;
      atom.wire = true;
      atom.duplicate = ++next;
      out.vertices.push_back(atom);
      const int id = out.size() - 1;
      w.interior.push_back(id);
      out.add_edge(prev, id);
      prev = id;
    }
    out.add_edge(prev, v);
    out.wires.push_back(std::move(w));
  }
  if (!out.coordinates.empty()) out.coordinates.resize(out.vertices.size(), Point{0, 0, 0});
  return out;
}

MisGraph defer_edges(const MisGraph& g, const std::vector<Edge>& edges) {
  MisGraph out = g;
  for (auto [u, v] : edges) {
    out.remove_edge(u, v);
    out.deferred_edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return out;
}

MisGraph logical_graph(const MisGraph& g) {
  MisGraph out = g;
  for (auto [u, v] : g.deferred_edges) out.add_edge(u, v);
  out.deferred_edges.clear();
  return out;
}

MisGraph reorder(const MisGraph& g, const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) != g.size())
    throw Error(ErrorKind::length_mismatch, "reorder needs every vertex exactly once");
  std::vector<int> old_of(names.size()), new_of(names.size(), -1);
  for (std::size_t k = 0; k < names.size(); ++k) {
    const int o = g.index_of(names[k]);
    if (o < 0 || new_of[o] >= 0) throw Error(ErrorKind::invalid_argument, "bad vertex name " + names[k]);
    old_of[k] = o;
    new_of[o] = static_cast<int>(k);
  }
  MisGraph out = g;
  out.edges.clear();
  for (std::size_t k = 0; k < names.size(); ++k) out.vertices[k] = g.vertices[old_of[k]];
  if (!g.coordinates.empty())
    for (std::size_t k = 0; k < names.size(); ++k) out.coordinates[k] = g.coordinates[old_of[k]];
  for (auto [u, v] : g.edges) out.add_edge(new_of[u], new_of[v]);
  out.deferred_edges.clear();
  for (auto [u, v] : g.deferred_edges)
    out.deferred_edges.push_back({std::min(new_of[u], new_of[v]), std::max(new_of[u], new_of[v])});
  for (auto& w : out.wires) {
    w.u = new_of[w.u];
    w.v = new_of[w.v];
    for (auto& x : w.interior) x = new_of[x];
  }
  return out;
}

namespace {

using Mask = std::uint64_t;

// Greedy clique cover; its size bounds the independence number from above.
int clique_cover_bound(Mask cand, const std::vector<Mask>& nb) {
  int cliques = 0;
  while (cand) {
    Mask clique_ok = cand;
    while (clique_ok) {
      const int v = std::countr_zero(clique_ok);
      cand &= ~(Mask{1} << v);
      clique_ok &= nb[v];
    }
    ++cliques;
  }
  return cliques;
}

}  // namespace

MisResult solve_mis_exact(const MisGraph& g) {
  const int n = g.size();
  if (n > kMisCap)
    throw Error(ErrorKind::too_large, std::to_string(n) + " vertices exceed the exact MIS cap of " +
                                          std::to_string(kMisCap));
  std::vector<Mask> nb(n, 0);
  for (auto [u, v] : g.edges) {
    nb[u] |= Mask{1} << v;
    nb[v] |= Mask{1} << u;
  }
  int best = -1;
  std::vector<Mask> found;
  auto rec = [&](auto&& self, Mask cand, Mask cur, int size) -> void {
    if (!cand) {
      if (size > best) {
        best = size;
        found.clear();
      }
      if (size == best) found.push_back(cur);
      return;
    }
    if (size + clique_cover_bound(cand, nb) < best) return;
    int pick = -1, deg = -1;
    for (Mask m = cand; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(nb[v] & cand);
      if (d > deg) {
        deg = d;
        pick = v;
      }
    }
    const Mask bit = Mask{1} << pick;
    if (deg == 0) {
      self(self, Mask{0}, cur | cand, size + std::popcount(cand));
      return;
    }
    self(self, cand & ~bit & ~nb[pick], cur | bit, size + 1);
    self(self, cand & ~bit, cur, size);
  };
  rec(rec, n == 64 ? ~Mask{0} : (Mask{1} << n) - 1, 0, 0);
  MisResult out;
  out.size = std::max(best, 0);
  for (Mask m : found) {
    std::vector<int> s;
    for (int v = 0; v < n; ++v)
      if ((m >> v) & 1) s.push_back(v);
    out.sets.push_back(std::move(s));
  }
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

Bit Assignment::get(const VariableId& v) const {
  auto it = values.find(v);
  return it == values.end() ? Bit::undecidable : it->second;
}

bool Assignment::decidable() const {
  return std::none_of(values.begin(), values.end(), [](const auto& kv) { return kv.second == Bit::undecidable; });
}

std::optional<std::uint64_t> Assignment::number(VarKind kind, int width) const {
  std::uint64_t out = 0;
  for (int i = 0; i < width; ++i) {
    const Bit b = get({kind, i, 0, 0});
    if (b == Bit::undecidable) return std::nullopt;
    if (b == Bit::one) out |= std::uint64_t{1} << i;
  }
  return out;
}

Assignment decode_set(const MisGraph& g, const std::vector<bool>& chosen) {
  if (static_cast<int>(chosen.size()) != g.size())
    throw Error(ErrorKind::length_mismatch, "chosen vector must cover every vertex");
  struct Seen {
    bool pos = false;
    bool neg = false;
  };
  std::map<VariableId, Seen> seen;
  for (int k = 0; k < g.size(); ++k) {
    const auto& v = g.vertices[k];
    if (v.wire) continue;
    auto& s = seen[v.var];
    if (chosen[k]) (v.negated ? s.neg : s.pos) = true;
  }
  Assignment a;
  for (const auto& [var, s] : seen)
    a.values[var] = s.pos && !s.neg ? Bit::one : (!s.pos && s.neg ? Bit::zero : Bit::undecidable);
  for (const auto& u : g.units)
    if (!a.values.count(u.var)) a.values[u.var] = u.negated ? Bit::zero : Bit::one;
  return a;
}

Assignment decode_set(const MisGraph& g, const std::vector<int>& chosen) {
  std::vector<bool> mask(g.size(), false);
  for (int v : chosen) mask.at(v) = true;
  return decode_set(g, mask);
}

LayoutReport validate_layout(const MisGraph& g, const std::vector<Point>& coords, double r_min, double r_max) {
  if (static_cast<int>(coords.size()) != g.size())
    throw Error(ErrorKind::length_mismatch, "one coordinate per vertex is required");
  auto dist = [&](int a, int b) {
    double s = 0;
    for (int d = 0; d < 3; ++d) s += (coords[a][d] - coords[b][d]) * (coords[a][d] - coords[b][d]);
    return std::sqrt(s);
  };
  LayoutReport r;
  for (auto [u, v] : g.edges) r.max_edge = std::max(r.max_edge, dist(u, v));
  std::set<Edge> deferred(g.deferred_edges.begin(), g.deferred_edges.end());
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      if (g.has_edge(a, b) || deferred.count({a, b})) continue;
      const double d = dist(a, b);
      r.min_non_edge = std::min(r.min_non_edge, d);
      if (d <= r.max_edge) r.violations.push_back({a, b});
    }
  r.r_low = std::max(r.max_edge, r_min);
  r.r_high = std::min(r.min_non_edge, r_max);
  r.feasible = r.r_low < r.r_high;
  for (auto e : g.deferred_edges)
    if (dist(e.first, e.second) >= r.r_low) r.unrealized_deferred.push_back(e);
  return r;
}

}  // namespace rydfact
