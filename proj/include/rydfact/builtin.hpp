#pragma once

#include <map>
#include <string>
#include <string_view>

#include "rydfact/mis.hpp"

namespace rydfact {

struct BuiltinInstance {
  std::string name;
  ProblemInstance instance;
  CnfFormula formula;  // the formula whose literals label the graph
  MisGraph graph;      // vertex order follows the published ket ordering
};

// G6, G15, G15Exp (3D layout), G35, G35Exp (2D layout, four deferred edges).
const std::map<std::string, BuiltinInstance>& builtin_instances();
const BuiltinInstance& builtin(std::string_view name);

// Printed forms of the three formulas.
CnfFormula psi6();
CnfFormula psi15();
CnfFormula psi35();  // before the dummy split

}  // namespace rydfact
