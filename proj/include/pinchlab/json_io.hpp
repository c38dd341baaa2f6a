#pragma once

// JSON serialization for the documented schemas:
//   diagram   {crossings:[{id,sign,arcs:[4]}], regions:[{id,corners:[[k,"a"],...]}]}
//   solution  {w:[{re,im},...], residual_norm, pinched:[k,...], tol}
//   rep       {generators:[{arc, matrix:[[re,im] x4]}], normalized}
//   volume    {volume, per_crossing:[real,...]}

#include <string>

#include "pinchlab/diagram.hpp"
#include "pinchlab/gluing.hpp"
#include "pinchlab/holonomy.hpp"

namespace pinchlab {

std::string diagram_to_json(const Diagram& d);
std::string solution_to_json(const WSolution& s);
std::string rep_to_json(const Diagram& d, const ParabolicRep& rho);
std::string volume_to_json(const Diagram& d, const std::vector<cplx>& w);

Diagram diagram_from_json(const std::string& text);
WSolution solution_from_json(const std::string& text);

}  // namespace pinchlab
