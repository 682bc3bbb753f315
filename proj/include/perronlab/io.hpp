#pragma once

// JSON and CSV forms of the perronlab value types.  Floats go through
// nlohmann's shortest round-trip formatting, which is byte-stable.

#include "perronlab/fixed_space.hpp"
#include "perronlab/gallery.hpp"
#include "perronlab/spectral.hpp"
#include "perronlab/types.hpp"
#include "perronlab/verify.hpp"
#include "perronlab/weighting.hpp"

#include <string>
#include <vector>

#include "json.hpp"

namespace perronlab::io {

using json = nlohmann::ordered_json;

json to_json(cplx z);
json to_json(const CVector& v);
json to_json(const SpaceModel& m);
json to_json(const LatticeVector& v);
json to_json(const OperatorMatrix& t);
json to_json(const ConstrainedOperator& t);
json to_json(const SpectralReport& rep);
json to_json(const CaseReport& rep);
json to_json(const SuiteSummary& s);
json to_json(const std::vector<WitnessStep>& chain);

// Scalars may be plain numbers or {"re", "im"} objects.  All readers throw
// ParseError on malformed input.
cplx complex_from_json(const json& j);
CVector vector_from_json(const json& j);
SpaceModel model_from_json(const json& j);
// {"model", "entries", "constraints"?}; "model" may be omitted (sup norm).
ConstrainedOperator operator_from_json(const json& j);
// {"kind", "params": {"lambda", "lambdas", "times", "rows"}}
SchemeFamily scheme_from_json(const json& j);

json read_json_file(const std::string& path);
ConstrainedOperator read_operator_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// "[1,0,-1];[-1,0,1]" or "[[1,0,-1],[-1,0,1]]" -> vectors on the given model.
std::vector<LatticeVector> parse_vector_list(const std::string& text, const SpaceModel& model);

// Flat CSV exports.  Columns:
//   spectrum: re,im,modulus,alg_mult,geo_mult,pole_order,peripheral
//   case:     case,fact,tag,status,measured,expected
//   probe:    index,norm,tail_bound,tail_flag
std::string spectral_csv(const SpectralReport& rep);
std::string case_csv(const CaseReport& rep);
std::string probe_csv(const ProbeReport& rep);

std::string format_double(double x);

}  // namespace perronlab::io
