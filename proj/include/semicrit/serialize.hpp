#pragma once

#include <string>

#include <json.hpp>

#include "semicrit/homology.hpp"
#include "semicrit/states.hpp"

namespace semicrit {

using Json = nlohmann::ordered_json;

// textual forms ------------------------------------------------------------
//   polynomial:  "3/2*a^2 - a + 1"
//   ring elt:    "(1 - a)*z[-1/2] + z[0]", "w[1/2]", "t^-2*s^1"
//   vector:      "(1-a)*f[-1] ps*[-1/2] | v[0,0]"; one-point ground "v[j]";
//                tilde ground tokens "u0", "u1", ...

PolyA parse_poly(const std::string& text);
RingElt parse_ring_elt(const std::string& text);
LaurentElt parse_laurent_elt(const std::string& text);

std::string to_string(const RingElt& x);
std::string to_string(const LaurentElt& x);
std::string to_string(const Monomial& m, const ModuleId& id);
std::string to_string(const Vector& v);

// parse a vector in the given module; u-tokens expand through the
// Clebsch-Gordan highest vectors of (lambda, mu)
Vector parse_vector(const std::string& text, const ModuleId& id);

Json vector_to_json(const Vector& v);
Json hreport_to_json(const HReport& rep);
Json qcells_to_json(const std::vector<QCell>& cells);

}  // namespace semicrit
