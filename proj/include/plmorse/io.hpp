#pragma once

// JSON input and JSON/DOT output for complexes, functions, metrics and the
// objects computed from them.

#include "plmorse/discrete_gradient.hpp"
#include "plmorse/homology.hpp"
#include "plmorse/pl_flow.hpp"
#include "plmorse/subdivision.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace plmorse::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws Error(ParseError) on I/O or syntax
/// errors.
Json read_json_file(const std::filesystem::path& path);

/// `{"cells":[{"id","dim","facets":[[id,sign],...],"label"?}]}` or
/// `{"simplices":[[v,...],...]}`; exactly one key. Throws Error(ParseError)
/// for malformed documents, plus the validation errors of CellComplex::build.
CellComplex complex_from_json(const Json& doc);
Json complex_to_json(const CellComplex& complex);

/// `{"values":{"id":"p/q",...}}`. Numbers are accepted as well as strings.
MorseFunction morse_from_json(const CellComplex& complex, const Json& doc);
Json morse_to_json(const CellComplex& complex, const MorseFunction& f);

/// `{"default":"equilateral"}` or `{"grams":{"a<e<t":[["1","0"],["0","1"]]}}`.
PiecewiseMetric metric_from_json(const Subdivision& s, const Json& doc);

Json homology_to_json(const HomologySummary& h);
Json critical_to_json(const CellComplex& complex, const CriticalReport& report);
Json differential_to_json(const CellComplex& complex, const MorseComplexData& data);
Json subdivision_to_json(const Subdivision& s);
Json flows_to_json(const Subdivision& s, const FlowClassification& flows);
Json trajectories_to_json(const CellComplex& complex, const std::vector<PLTrajectory>& trajectories);
Json swept_to_json(const Subdivision& s, const SweptComplex& swept);
Json tameify_to_json(const CellComplex& complex, const MorseFunction& result, const std::vector<TameifyStep>& steps);

/// alpha -> V(alpha) arrows, labelled with the sign.
std::string gradient_dot(const CellComplex& complex, const GradientField& v);
/// Out-flow arrows from facet barycenters to simplex barycenters, keyed by
/// X1 simplex keys.
std::string flows_dot(const Subdivision& s, const FlowClassification& flows);
/// Trajectories overlaid on the 1-skeleton of X1.
std::string trajectories_dot(const Subdivision& s, const std::vector<PLTrajectory>& trajectories);

}  // namespace plmorse::io
