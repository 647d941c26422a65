#include "rydfact/builtin.hpp"

namespace rydfact {

namespace {

Clause clause(std::initializer_list<const char*> lits) {
  Clause c;
  for (const char* s : lits) c.push_back(Literal::parse(s));
  return c;
}

CnfFormula formula(std::initializer_list<const char*> units, std::initializer_list<Clause> clauses) {
  CnfFormula f;
  for (const char* u : units) f.units.push_back(Literal::parse(u));
  f.clauses = clauses;
  f.three_sat = f.max_clause_size() <= 3;
  return f;
}

struct Placed {
  const char* name;
  Point at;
};

void place(MisGraph& g, std::initializer_list<Placed> points, int dimension) {
  g.coordinates.assign(g.vertices.size(), Point{0, 0, 0});
  g.dimension = dimension;
  for (const auto& p : points) {
    const int k = g.index_of(p.name);
    if (k < 0) throw Error(ErrorKind::invalid_argument, std::string("no vertex ") + p.name);
    g.coordinates[k] = p.at;
  }
}

Edge edge(const MisGraph& g, const char* a, const char* b) { return {g.index_of(a), g.index_of(b)}; }

BuiltinInstance make_g6() {
  // Unit clauses p1, q1 are real K1 gadgets here.
  CnfFormula f = formula({}, {clause({"p1"}), clause({"q1"}), clause({"p0", "q0"}), clause({"~p0", "~q0"})});
  MisGraph g = graph_from_cnf(f);
  g = reorder(g, {"p0^(1)", "p1^(1)", "q0^(1)", "q1^(1)", "~p0^(1)", "~q0^(1)"});
  return {"G6", create_instance(6, Widths{2, 2}), f, g};
}

BuiltinInstance make_g15() {
  MisGraph g = graph_from_cnf(psi15());
  g = reorder(g, {"p1^(1)", "p1^(2)", "p1^(3)", "p2^(1)", "q1^(1)", "q1^(2)", "q1^(3)", "q2^(1)", "~p1^(1)",
                  "~p2^(1)", "~p2^(2)", "~q1^(1)", "~q2^(1)", "~q2^(2)"});
  return {"G15", create_instance(15, Widths{3, 3}), psi15(), g};
}

BuiltinInstance make_g15_exp() {
  BuiltinInstance b = make_g15();
  b.name = "G15Exp";
  MisGraph& g = b.graph;
  g = expand_wires(g, {edge(g, "p2^(1)", "~p2^(1)"), edge(g, "q2^(1)", "~q2^(2)"), edge(g, "q2^(1)", "~q2^(1)")},
                   {2, 2, 6});
  place(g,
        {{"p1^(1)", {0, 6.43, 6.43}},          {"p1^(2)", {0, -6.43, 6.43}},
         {"p1^(3)", {-9.09, 0, 0}},            {"p2^(1)", {-1.64, 12.67, 0}},
         {"q1^(1)", {18.18, 0, 0}},            {"q1^(2)", {9.09, -6.43, 6.43}},
         {"q1^(3)", {9.09, 6.43, -6.43}},      {"q2^(1)", {24.61, 0, -6.43}},
         {"~p1^(1)", {0, 0, 0}},               {"~p2^(1)", {-13.64, 4.55, -6.43}},
         {"~p2^(2)", {4.55, 14.3, -6.43}},     {"~q1^(1)", {9.09, 0, 0}},
         {"~q2^(1)", {-13.64, -4.55, -6.43}},  {"~q2^(2)", {13.64, 14.3, -6.43}},
         {"w^(1)", {-10, 16.31, 0}},           {"w^(2)", {-15.45, 12.73, -6.43}},
         {"w^(3)", {27.34, 8.67, -6.43}},      {"w^(4)", {22.18, 15.85, -6.43}},
         {"w^(5)", {29.61, -7, -6.43}},        {"w^(6)", {22.73, -13.64, -6.43}},
         {"w^(7)", {13.64, -13.64, -6.43}},    {"w^(8)", {4.55, -13.64, -6.43}},
         {"w^(9)", {-4.55, -13.64, -6.43}},    {"w^(10)", {-13.64, -13.64, -6.43}}},
        3);
  return b;
}

CnfFormula psi35_three_sat() { return to_three_sat(psi35()); }

BuiltinInstance make_g35() {
  CnfFormula f = psi35_three_sat();
  MisGraph g = graph_from_cnf(f);
  g = reorder(g, {"p1^(1)", "p1^(2)", "p1^(3)", "p2^(1)", "p2^(2)", "q1^(1)", "q1^(2)", "q1^(3)", "q2^(1)",
                  "q2^(2)", "s1^(1)", "~p1^(1)", "~p1^(2)", "~p1^(3)", "~q1^(1)", "~q2^(1)", "~s1^(1)"});
  return {"G35", create_instance(35, Widths{3, 3}), f, g};
}

BuiltinInstance make_g35_exp() {
  BuiltinInstance b = make_g35();
  b.name = "G35Exp";
  MisGraph& g = b.graph;
  g = defer_edges(g, {edge(g, "p1^(1)", "~p1^(1)"), edge(g, "p1^(1)", "~p1^(2)"), edge(g, "p1^(2)", "~p1^(3)"),
                      edge(g, "p1^(3)", "~p1^(1)")});
  g = expand_wires(g, {edge(g, "p1^(2)", "~p1^(2)"), edge(g, "p1^(3)", "~p1^(2)")}, {4, 4});
  // The published table numbers some duplicates differently from the printed
  // graph; these are the table rows under the graph's labels.
  place(g,
        {{"p1^(1)", {35.36, 32.14, 0}},  {"p1^(2)", {78.21, 41.43, 0}},  {"p1^(3)", {36.43, 43.21, 0}},
         {"p2^(1)", {29.29, 27.14, 0}},  {"p2^(2)", {62.14, 29.29, 0}},  {"q1^(1)", {71.79, 36.43, 0}},
         {"q1^(2)", {62.14, 48.21, 0}},  {"q1^(3)", {60.36, 36.79, 0}},  {"q2^(1)", {42.50, 48.21, 0}},
         {"q2^(2)", {53.93, 47.14, 0}},  {"s1^(1)", {55.36, 33.93, 0}},  {"~p1^(1)", {73.21, 47.14, 0}},
         {"~p1^(2)", {56.43, 53.93, 0}}, {"~p1^(3)", {42.14, 37.5, 0}},  {"~q1^(1)", {66.79, 41.79, 0}},
         {"~q2^(1)", {47.86, 42.14, 0}}, {"~s1^(1)", {48.93, 34.29, 0}}, {"w^(1)", {84.29, 47.86, 0}},
         {"w^(2)", {80, 55, 0}},         {"w^(3)", {73.57, 61.07, 0}},   {"w^(4)", {64.29, 59.29, 0}},
         {"w^(5)", {31.43, 50.36, 0}},   {"w^(6)", {34.64, 57.5, 0}},    {"w^(7)", {42.5, 61.43, 0}},
         {"w^(8)", {50.36, 61.07, 0}}},
        2);
  return b;
}

}  // namespace

CnfFormula psi6() {
  return formula({"p1", "q1"}, {clause({"p0", "q0"}), clause({"~p0", "~q0"})});
}

CnfFormula psi15() {
  return formula({"p0", "q0"}, {clause({"p1", "p2"}), clause({"q1", "q2"}), clause({"p1", "q1"}),
                                clause({"~p1", "~q1"}), clause({"p1", "~p2", "~q2"}), clause({"q1", "~q2", "~p2"})});
}

CnfFormula psi35() {
  return formula({"p0", "q0"}, {clause({"p1", "p2"}), clause({"p1", "q1"}), clause({"p1", "q2"}),
                                clause({"~p1", "~q1"}), clause({"q1", "q2", "~p1"}),
                                clause({"p2", "q1", "~p1", "~q2"})});
}

const std::map<std::string, BuiltinInstance>& builtin_instances() {
  static const std::map<std::string, BuiltinInstance> all = [] {
    std::map<std::string, BuiltinInstance> m;
    for (auto b : {make_g6(), make_g15(), make_g15_exp(), make_g35(), make_g35_exp()}) m.emplace(b.name, b);
    return m;
  }();
  return all;
}

const BuiltinInstance& builtin(std::string_view name) {
  const auto& all = builtin_instances();
  auto it = all.find(std::string(name));
  if (it == all.end()) throw Error(ErrorKind::invalid_argument, "unknown builtin graph " + std::string(name));
  return it->second;
}

}  // namespace rydfact
