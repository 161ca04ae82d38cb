#pragma once

#include <string>

#include <json.hpp>

#include "rarebasis/extremal.hpp"
#include "rarebasis/omega.hpp"
#include "rarebasis/oracle.hpp"
#include "rarebasis/spectrum.hpp"

namespace rarebasis {

using Json = nlohmann::ordered_json;

/// Exact value object: mantissa/exponent plus an exact decimal rendering.
/// The decimal is display-only; consumers needing exactness read the pair.
Json json_value(const Dyadic& d);
Json json_value(const ExactRatio& r);

Json to_json(const VerificationReport& report);
Json to_json(const DensityReport& report);
Json to_json(const ExtractionResult& result);
Json to_json(const CompletenessResult& result);
Json to_json(const IsPropertyReport& report);
Json to_json(const ContainmentReport& report);
Json to_json(const LadderReport& report);
Json to_json(const CardinalityReport& report);

std::string verification_text(const VerificationReport& report);

}  // namespace rarebasis
