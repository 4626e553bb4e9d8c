#ifndef KMR_SERIALIZE_HPP
#define KMR_SERIALIZE_HPP

#include <json.hpp>

#include "kmr/splitting.hpp"
#include "kmr/zeta.hpp"

namespace kmr {

using Json = nlohmann::json;

// Terms are arrays of {"coeff": "p/q", "factors": [{"kind", "label", "n", "mode"}, ...]}.
// Poly factors have kind "X" and an "exp"; one-forms end with a "dX" factor,
// vector fields with a "partial" factor; states may carry "z" (regulator power).
Json to_json(const AffineData& ad, const Poly& p);
Json to_json(const AffineData& ad, const OneForm& w);
Json to_json(const AffineData& ad, const VectorField& v);
Json to_json(const AffineData& ad, const VAState& s);
Json to_json(const AffineData& ad, const D1State& s);

Poly poly_from_json(const AffineData& ad, const Json& j);
OneForm form_from_json(const AffineData& ad, const Json& j);
VectorField field_from_json(const AffineData& ad, const Json& j);
VAState state_from_json(const AffineData& ad, const Json& j);

Json to_json(const LoopAlgebra& g, const SplittingReport& r);
Json to_json(const LoopAlgebra& g, const SolveReport& r);
Json to_json(const AffineData& ad, const CReport& r);
Json to_json(const LoopAlgebra& g, const ZetaRow& r);

}  // namespace kmr

#endif
