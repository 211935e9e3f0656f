#pragma once

#include <json.hpp>

#include "hypercone/hyperbolic.hpp"
#include "hypercone/pencil.hpp"
#include "hypercone/poly.hpp"
#include "hypercone/polycone.hpp"
#include "hypercone/unipoly.hpp"
#include "hypercone/vamos.hpp"

namespace hypercone {

using nlohmann::json;

// Schemas (writers emit canonical order and reduced fractions; readers accept
// any term order and unreduced fractions, canonicalizing on load):
//   Poly:    {"nvars": n, "terms": [{"c": "num/den", "e": [ints]}, ...]}
//   PolyVec: {"entries": [Poly, ...]}
//   Pencil:  {"n": n, "m": m, "matrices": [[["num/den", ...], ...], ...]}
//   RayCone: {"dim": n, "rays": [["int", ...], ...]}
//   UniPoly: ["num/den", ...] ascending powers

json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);

json polyvec_to_json(const PolyVec& v);
PolyVec polyvec_from_json(const json& j);

json pencil_to_json(const SymPencil& p);
SymPencil pencil_from_json(const json& j);  // symmetry violation is a hard error

json raycone_to_json(const RayCone& c);
RayCone raycone_from_json(const json& j);
json forms_to_json(int dim, const std::vector<LinForm>& forms);

json unipoly_to_json(const UniPoly& u);
UniPoly unipoly_from_json(const json& j);

json report_to_json(const SampleReport& r);
json certreport_to_json(const CertReport& r);

std::vector<Rational> point_from_json(const json& j);

// Comma-separated rationals, e.g. "1,1,0,0" or "1/2,-3,0".
std::vector<Rational> parse_point(const std::string& text);

}  // namespace hypercone
