#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rydfact/builtin.hpp"
#include "rydfact/error.hpp"
#include "rydfact/mis.hpp"

using namespace rydfact;

namespace {

std::vector<bool> bits_of(const std::string& s) {
  std::vector<bool> out;
  for (char c : s)
    if (c == '0' || c == '1') out.push_back(c == '1');
  return out;
}

std::set<std::string> names(const MisGraph& g, const std::vector<int>& set) {
  std::set<std::string> out;
  for (int v : set) out.insert(g.vertices[v].name());
  return out;
}

Edge edge(const MisGraph& g, const char* a, const char* b) {
  const int u = g.index_of(a), v = g.index_of(b);
  return {std::min(u, v), std::max(u, v)};
}

CnfFormula random_3sat(std::mt19937_64& rng, int vars, int clauses) {
  CnfFormula f;
  for (int c = 0; c < clauses; ++c) {
    Clause cl;
    const int len = 1 + static_cast<int>(rng() % 3);
    while (static_cast<int>(cl.size()) < len) {
      const Literal l{VariableId::p(static_cast<int>(rng() % vars)), static_cast<bool>(rng() & 1)};
      if (std::find_if(cl.begin(), cl.end(), [&](const Literal& x) { return x.var == l.var; }) == cl.end())
        cl.push_back(l);
    }
    f.clauses.push_back(cl);
  }
  f.three_sat = true;
  return f;
}

std::map<VariableId, bool> as_map(const Assignment& a) {
  std::map<VariableId, bool> out;
  for (const auto& [v, b] : a.values)
    if (b != Bit::undecidable) out[v] = b == Bit::one;
  return out;
}

}  // namespace

TEST(GraphFromCnf, SixStrict) {
  const MisGraph g = graph_from_cnf(psi6(), true);
  EXPECT_EQ(g.size(), 6);
  EXPECT_EQ(g.edges.size(), 4u);
  EXPECT_EQ(g.clause_count, 4);
  EXPECT_EQ(solve_mis_exact(g).size, 4);
}

TEST(GraphFromCnf, FifteenWithoutUnits) {
  const MisGraph g = graph_from_cnf(psi15());
  EXPECT_EQ(g.size(), 14);
  EXPECT_EQ(g.clause_count, 6);
  int gadget = 0, conflict = 0;
  for (auto [u, v] : g.edges) {
    const auto &a = g.vertices[u], &b = g.vertices[v];
    if (a.clause == b.clause) {
      ++gadget;
    } else {
      ++conflict;
      EXPECT_EQ(a.var, b.var);
      EXPECT_NE(a.negated, b.negated);
    }
  }
  EXPECT_EQ(gadget, 4 + 6);
  EXPECT_EQ(conflict, 10);
}

TEST(GraphFromCnf, MatchesBuiltinG15) {
  const MisGraph a = graph_from_cnf(psi15());
  const MisGraph& b = builtin("G15").graph;
  std::set<std::pair<std::string, std::string>> ea, eb;
  for (auto [u, v] : a.edges) ea.insert(std::minmax(a.vertices[u].name(), a.vertices[v].name()));
  for (auto [u, v] : b.edges) eb.insert(std::minmax(b.vertices[u].name(), b.vertices[v].name()));
  EXPECT_EQ(ea, eb);
}

TEST(GraphFromCnf, SingleUnit) {
  CnfFormula f;
  f.clauses.push_back({pos(VariableId::p(0))});
  const MisGraph g = graph_from_cnf(f);
  EXPECT_EQ(g.size(), 1);
  EXPECT_EQ(solve_mis_exact(g).size, 1);
}

TEST(GraphFromCnf, RejectsLongClause) {
  CnfFormula f;
  f.clauses.push_back({pos(VariableId::p(0)), pos(VariableId::p(1)), pos(VariableId::p(2)), pos(VariableId::p(3))});
  try {
    graph_from_cnf(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::clause_too_large);
  }
}

TEST(ExpandWires, FifteenExperimentalHas24Atoms) {
  const MisGraph& g = builtin("G15").graph;
  const MisGraph w = expand_wires(
      g, {edge(g, "p2^(1)", "~p2^(1)"), edge(g, "q2^(1)", "~q2^(2)"), edge(g, "q2^(1)", "~q2^(1)")}, {2, 2, 6});
  EXPECT_EQ(w.size(), 24);
  EXPECT_EQ(w.wire_offset(), 5);
  EXPECT_FALSE(w.has_edge(w.index_of("p2^(1)"), w.index_of("~p2^(1)")));
}

TEST(ExpandWires, ThirtyFiveTwoDimensional) {
  const MisGraph& g = builtin("G35").graph;
  MisGraph d = defer_edges(g, {edge(g, "p1^(1)", "~p1^(1)"), edge(g, "p1^(1)", "~p1^(2)"),
                               edge(g, "p1^(2)", "~p1^(3)"), edge(g, "p1^(3)", "~p1^(1)")});
  const MisGraph w = expand_wires(d, {edge(d, "p1^(2)", "~p1^(2)"), edge(d, "p1^(3)", "~p1^(2)")}, {4, 4});
  EXPECT_EQ(w.size(), 25);
  EXPECT_EQ(w.size() - w.wire_atom_count(), 17);
  EXPECT_EQ(w.wire_atom_count(), 8);
}

TEST(ExpandWires, NothingIsIdentity) {
  const MisGraph& g = builtin("G15").graph;
  const MisGraph w = expand_wires(g, {}, {});
  EXPECT_EQ(w.size(), g.size());
  EXPECT_EQ(w.edges, g.edges);
}

TEST(ExpandWires, Errors) {
  const MisGraph& g = builtin("G6").graph;
  const Edge e = edge(g, "p0^(1)", "~p0^(1)");
  try {
    expand_wires(g, {e}, {3});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::odd_wire_length);
  }
  try {
    expand_wires(g, {edge(g, "p1^(1)", "q1^(1)")}, {2});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::missing_edge);
  }
  try {
    expand_wires(g, {e}, {});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::length_mismatch);
  }
}

TEST(WirePenalty, Exhaustive) {
  for (int m = 1; m <= 4; ++m) {
    MisGraph g;
    g.vertices = {VertexLabel::parse("p0^(1)"), VertexLabel::parse("~p0^(1)")};
    g.add_edge(0, 1);
    const MisGraph w = expand_wires(g, {{0, 1}}, {2 * m});
    ASSERT_EQ(w.size(), 2 + 2 * m);
    for (int ends = 0; ends < 4; ++ends) {
      int best = -1;
      for (std::uint64_t s = 0; s < (1u << (2 * m)); ++s) {
        const std::uint64_t full = static_cast<std::uint64_t>(ends) | (s << 2);
        bool ok = true;
        for (auto [u, v] : w.edges)
          if ((full >> u & 1) && (full >> v & 1)) ok = false;
        if (ok) best = std::max(best, __builtin_popcountll(s));
      }
      EXPECT_EQ(best, ends == 3 ? m - 1 : m) << "m=" << m << " ends=" << ends;
    }
  }
}

TEST(SolveMis, SixTwoSets) {
  const MisGraph& g = builtin("G6").graph;
  const MisResult r = solve_mis_exact(g);
  EXPECT_EQ(r.size, 4);
  ASSERT_EQ(r.sets.size(), 2u);
  std::set<std::set<std::string>> got{names(g, r.sets[0]), names(g, r.sets[1])};
  std::set<std::set<std::string>> want{{"p1^(1)", "q1^(1)", "p0^(1)", "~q0^(1)"},
                                       {"p1^(1)", "q1^(1)", "q0^(1)", "~p0^(1)"}};
  EXPECT_EQ(got, want);
}

TEST(SolveMis, FifteenDecodesToModels) {
  const MisGraph& g = builtin("G15").graph;
  const MisResult r = solve_mis_exact(g);
  EXPECT_EQ(r.size, 6);
  const auto clauses = psi15().effective_clauses();
  for (const auto& s : r.sets) {
    const Assignment a = decode_set(g, s);
    EXPECT_TRUE(a.decidable());
    EXPECT_TRUE(oracle::satisfies(clauses, as_map(a)));
  }
}

TEST(SolveMis, Edgeless) {
  MisGraph g;
  for (int k = 1; k <= 5; ++k) g.vertices.push_back(VertexLabel::parse("p" + std::to_string(k) + "^(1)"));
  const MisResult r = solve_mis_exact(g);
  EXPECT_EQ(r.size, 5);
  EXPECT_EQ(r.sets.size(), 1u);
}

TEST(SolveMis, AgreesWithSubsetEnumeration) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    MisGraph g;
    const int n = 4 + static_cast<int>(rng() % 13);
    for (int k = 0; k < n; ++k) g.vertices.push_back(VertexLabel::parse("p" + std::to_string(k) + "^(1)"));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 4 == 0) g.add_edge(u, v);
    const auto [size, sets] = oracle::max_independent_sets(g);
    const MisResult r = solve_mis_exact(g);
    ASSERT_EQ(r.size, size);
    std::set<std::uint64_t> got;
    for (const auto& s : r.sets) {
      std::uint64_t m = 0;
      for (int v : s) m |= std::uint64_t{1} << v;
      got.insert(m);
    }
    ASSERT_EQ(got, std::set<std::uint64_t>(sets.begin(), sets.end()));
  }
}

TEST(SolveMis, TooLarge) {
  MisGraph g;
  for (int k = 0; k <= kMisCap; ++k) g.vertices.push_back(VertexLabel::parse("p" + std::to_string(k) + "^(1)"));
  EXPECT_THROW(solve_mis_exact(g), Error);
}

TEST(SatMis, RandomFormulas) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 150; ++t) {
    const CnfFormula f = random_3sat(rng, 5, 1 + static_cast<int>(rng() % 10));
    const MisGraph g = graph_from_cnf(f);
    const bool sat = !oracle::models(f).empty();
    const MisResult r = solve_mis_exact(g);
    ASSERT_EQ(r.size == g.clause_count, sat) << f.to_string();
    if (!sat) continue;
    for (const auto& s : r.sets) {
      // undecidable variables are free, fill them with 0
      auto a = as_map(decode_set(g, s));
      for (const auto& v : f.variables()) a.try_emplace(v, false);
      ASSERT_TRUE(oracle::satisfies(f.clauses, a)) << f.to_string();
    }
  }
}

TEST(DecodeSet, FifteenCaptionPeaks) {
  const MisGraph& g = builtin("G15").graph;
  const std::vector<std::pair<std::string, std::pair<int, int>>> peaks{
      {"000,1,111,0;100010", {5, 3}},
      {"111,0,000,1;0,01,1,00", {3, 5}},
      {"000,1,110,0;1,00,0,11", {5, 3}},
      {"110,0,000,1;0,11,1,00", {3, 5}}};
  for (const auto& [ket, pq] : peaks) {
    const Assignment a = decode_set(g, bits_of(ket));
    ASSERT_TRUE(a.decidable()) << ket;
    EXPECT_EQ(a.number(VarKind::p_bit, 3), static_cast<std::uint64_t>(pq.first)) << ket;
    EXPECT_EQ(a.number(VarKind::q_bit, 3), static_cast<std::uint64_t>(pq.second)) << ket;
  }
}

TEST(DecodeSet, ThirtyFiveCaptionPeak) {
  const MisGraph& g = builtin("G35").graph;
  const Assignment a = decode_set(g, bits_of("000,10,100,11,1;101,0,0,0"));
  ASSERT_TRUE(a.decidable());
  EXPECT_EQ(a.number(VarKind::p_bit, 3), 5u);
  EXPECT_EQ(a.number(VarKind::q_bit, 3), 7u);
}

TEST(DecodeSet, Undecidable) {
  const MisGraph& g = builtin("G15").graph;
  std::vector<bool> none(g.size(), false);
  EXPECT_EQ(decode_set(g, none).get(VariableId::p(1)), Bit::undecidable);
  std::vector<bool> both(g.size(), false);
  both[g.index_of("p1^(1)")] = true;
  both[g.index_of("~p1^(1)")] = true;
  EXPECT_EQ(decode_set(g, both).get(VariableId::p(1)), Bit::undecidable);
  // ledger units are filled in
  EXPECT_EQ(decode_set(g, none).get(VariableId::p(0)), Bit::one);
}

TEST(Layout, FifteenWindow) {
  const MisGraph& g = builtin("G15Exp").graph;
  ASSERT_EQ(g.coordinates.size(), 24u);
  const LayoutReport r = validate_layout(g, g.coordinates);
  EXPECT_TRUE(r.feasible);
  EXPECT_LT(r.max_edge, r.min_non_edge);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Layout, ThirtyFiveWindowAndDeferred) {
  const MisGraph& g = builtin("G35Exp").graph;
  ASSERT_EQ(g.coordinates.size(), 25u);
  const LayoutReport r = validate_layout(g, g.coordinates);
  EXPECT_TRUE(r.feasible);
  std::set<std::pair<std::string, std::string>> flagged;
  for (auto [u, v] : r.unrealized_deferred) flagged.insert({g.vertices[u].name(), g.vertices[v].name()});
  std::set<std::pair<std::string, std::string>> want{{"p1^(1)", "~p1^(1)"},
                                                     {"p1^(1)", "~p1^(2)"},
                                                     {"p1^(2)", "~p1^(3)"},
                                                     {"p1^(3)", "~p1^(1)"}};
  EXPECT_EQ(flagged, want);
}

TEST(Layout, CoincidentVerticesViolate) {
  MisGraph g;
  g.vertices = {VertexLabel::parse("p0^(1)"), VertexLabel::parse("~p0^(1)"), VertexLabel::parse("q0^(1)")};
  g.add_edge(0, 1);
  const std::vector<Point> coords{Point{0, 0, 0}, Point{5, 0, 0}, Point{0, 0, 0}};
  const LayoutReport r = validate_layout(g, coords);
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.violations.empty());
}

TEST(Builtins, Shapes) {
  EXPECT_EQ(builtin("G6").graph.size(), 6);
  EXPECT_EQ(builtin("G35Exp").graph.wires.size(), 2u);
  EXPECT_EQ(builtin("G35Exp").graph.deferred_edges.size(), 4u);
  const MisGraph& g = builtin("G15Exp").graph;
  for (int k = 1; k <= 10; ++k) EXPECT_GE(g.index_of("w^(" + std::to_string(k) + ")"), 0) << k;
  EXPECT_EQ(g.index_of("w^(11)"), -1);
  EXPECT_THROW(builtin("G7"), Error);
}

TEST(WireFidelity, FifteenProjections) {
  const MisGraph& plain = builtin("G15").graph;
  const MisGraph& wired = builtin("G15Exp").graph;
  const MisResult a = solve_mis_exact(plain);
  const MisResult b = solve_mis_exact(wired);
  EXPECT_EQ(b.size, a.size + 5);
  std::set<std::set<std::string>> pa, pb;
  for (const auto& s : a.sets) pa.insert(names(plain, s));
  for (const auto& s : b.sets) {
    std::set<std::string> n;
    for (int v : s)
      if (!wired.vertices[v].wire) n.insert(wired.vertices[v].name());
    pb.insert(n);
  }
  EXPECT_EQ(pa, pb);
}

TEST(GraphOps, ReorderAndLogical) {
  const MisGraph& g = builtin("G35Exp").graph;
  const MisGraph l = logical_graph(g);
  EXPECT_TRUE(l.deferred_edges.empty());
  EXPECT_EQ(l.edges.size(), g.edges.size() + 4);
  MisGraph r = reorder(builtin("G6").graph, {"~q0^(1)", "~p0^(1)", "q1^(1)", "q0^(1)", "p1^(1)", "p0^(1)"});
  EXPECT_EQ(r.vertices[0].name(), "~q0^(1)");
  EXPECT_TRUE(r.has_edge(r.index_of("p0^(1)"), r.index_of("~p0^(1)")));
  EXPECT_THROW(r.remove_edge(r.index_of("p1^(1)"), r.index_of("q1^(1)")), Error);
}
