#pragma once

// JSON interchange. Rationals are strings "p/q" (or "p"). Generators are
// dense arrays, or objects {label: value} when written sparsely; both are
// accepted on input. Chains are stored as deltas: each stage lists its new
// labels and the generators it adds to the previous stage.

#include <string>

#include <json.hpp>

#include "ubk/backforth.hpp"

namespace ubk {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const RationalVector& v);
RationalVector vector_from_json(const Json& j, std::size_t dim);

/// {"dim": n, "generators": [[...], ...]}
Json to_json(const Polytope& p);
Polytope polytope_from_json(const Json& j);

/// {"labels": [...], "k_bound": "K", "ball": [[...], ...]}; large spaces
/// write generators sparsely by label.
Json to_json(const BasedSpace& s);
BasedSpace space_from_json(const Json& j);

/// {"domain": space, "codomain": space, "label_map": {from: to}}
Json to_json(const BasedMorphism& m);
BasedMorphism morphism_from_json(const Json& j);
Json label_map_json(const BasedMorphism& m);
BasedMorphism morphism_from_label_map(const BasedSpace& domain, const BasedSpace& codomain, const Json& map);

Json to_json(const DistortionInterval& d);
Json to_json(const ValidationReport& r);
Json to_json(const SubsetWitness& w);
Json to_json(const AmalgamReport& r);
Json to_json(const ExtensionReport& r);
Json to_json(const SandwichParams& p);

Json to_json(const Chain& c);
Chain chain_from_json(const Json& j);

/// Morphisms are stored as label maps between the recorded stages.
Json to_json(const BackForthTranscript& t);
BackForthTranscript transcript_from_json(const Json& j, const Chain& x, const Chain& y);
Json to_json(const StuckReport& s);

/// Reads a whole file and parses it; MalformedInput on I/O or syntax errors.
Json read_json_file(const std::string& path);
/// Stable text form (2-space indent, trailing newline).
std::string dump(const Json& j);

}  // namespace ubk
