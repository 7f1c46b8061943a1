#pragma once
/// JSON documents: the versioned code format and the machine-readable reports
/// emitted by the CLI.

#include <string>

#include <json.hpp>

#include "srct/coeff.hpp"
#include "srct/entropy.hpp"
#include "srct/layered.hpp"
#include "srct/region.hpp"

namespace srct {

using Json = nlohmann::ordered_json;

inline constexpr int kCodeDocumentVersion = 1;
inline constexpr int kReportVersion = 1;

Json serialize_code(const LinearStorageCode& code);

/// Throws MalformedDocument on missing or mistyped fields, UnsupportedVersion
/// on an unknown version and ValidationError on out-of-range entries,
/// inconsistent dimensions or a repair row outside its node's row space.
LinearStorageCode deserialize_code(const Json& doc);
LinearStorageCode parse_code(const std::string& text);  // also maps parse errors to MalformedDocument

Json to_json(const RegionVerdict& v);
Json to_json(const SdssReport& r);
Json to_json(const SymmetryReport& r);
Json to_json(const std::vector<CatalogEntry>& entries);
Json to_json(const CoeffSweepReport& r);
Json to_json(const RatePoint& pt);

}  // namespace srct
