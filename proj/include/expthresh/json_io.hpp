#pragma once

#include "expthresh/certificate.hpp"
#include "expthresh/cover_family.hpp"
#include "expthresh/monotone_family.hpp"
#include "expthresh/weight_function.hpp"

#include <json.hpp>

#include <filesystem>

namespace expthresh {

using Json = nlohmann::json;

Json to_json(const SubsetMask& s);
SubsetMask subset_from_json(const Json& j, unsigned n);

/// {"n": n, "entries": [{"set": [..], "weight": "num/den"}]}
Json to_json(const WeightFunction& g);
WeightFunction weight_function_from_json(const Json& j);

/// {"n": n, "minimal": [[..], ..]}
Json to_json(const MonotoneFamily& f);
MonotoneFamily monotone_family_from_json(const Json& j);

Json to_json(const CoverFamily& g);
CoverFamily cover_family_from_json(const Json& j);

/// {"lower": "..", "upper": ".."} with outward-rounded decimal strings.
Json to_json(const Interval& x);

Json to_json(const VerificationReport& r);
/// The certificate, plus its report and "valid" flag when given.
Json to_json(const Certificate& c, const VerificationReport* report = nullptr);
Certificate certificate_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes through a temporary file and a rename, so readers never see a partial file.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace expthresh
