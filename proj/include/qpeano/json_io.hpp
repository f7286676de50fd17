#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qpeano/funcrep.hpp"
#include "qpeano/peano.hpp"
#include "qpeano/quad.hpp"

namespace qpeano {

/// Input that does not parse or does not match the expected shape.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

using Json = nlohmann::json;

Json parse_json(const std::string& text);

// {"type":"polynomial","coeffs":[...]}
// {"type":"piecewise","breakpoints":[...],"pieces":[[...],...],"outside":0}
// {"type":"builtin","name":"exp","params":{"rate":1}}
FunctionSpec function_from_json(const Json& j);
Json function_to_json(const FunctionSpec& f);

// {"q":2,"domain":{"a":0,"b":1},"point_terms":[{"c":1,"x":0.5}],
//  "integral_terms":[{"w":1,"a":0,"b":1}]}
LinearFunctional functional_from_json(const Json& j);
Json functional_to_json(const LinearFunctional& L);

// {"nodes":[...],"weights":[...],"b":1,"q":2,"design_degree":1}
QuadratureRule rule_from_json(const Json& j);
Json rule_to_json(const QuadratureRule& rule);

/// Serialises with every number printed as %.17g (integers stay integers,
/// non-finite values become null).
void write_json(std::ostream& os, const Json& j, int indent = 2);
std::string format_number(double v);

}  // namespace qpeano
