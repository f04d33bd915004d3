#pragma once

// JSON forms of presentations, certificates, coset tables and growth data.

#include <string>
#include <vector>

#include <json.hpp>

#include "xg/decision.hpp"
#include "xg/enumerator.hpp"
#include "xg/isoperimetry.hpp"
#include "xg/presentation.hpp"

namespace xg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// {version, generators, relators, meta, lifting?}
Json to_json(const Presentation& p);
/// Throws ParseError or ArgumentError on malformed input.
Presentation presentation_from_json(const Json& j);
/// Text if the content does not start with '{', JSON otherwise.
Presentation load_presentation(const std::string& path);

/// {word, factors: [{theta, relator, sign}], area, radius}
Json to_json(const AreaCertificate& c, const Alphabet& a);
AreaCertificate certificate_from_json(const Json& j, const Alphabet& a);

/// {n_cosets, generators: {name: images}}
Json to_json(const CosetTable& t, const Alphabet& a);

/// {generators, radii, sizes, classification, heuristic_flag}
Json growth_json(const std::vector<Word>& gens, const Alphabet& a,
                 const std::vector<std::size_t>& sizes, const GrowthClass& g);

/// Deletes the central generators from every relator and drops relators
/// that become trivial. Lifting σᵢ refer to the relators that remain.
Presentation central_quotient(const Presentation& total, const std::vector<std::string>& central);

}  // namespace xg
