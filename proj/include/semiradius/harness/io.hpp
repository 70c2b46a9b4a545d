#pragma once
//
// Flat-file formats: instance JSON (entries as [re, im] pairs printed with 17
// significant digits, so binary64 values round-trip exactly), RangeCloud CSV,
// and JSON views of the result types.
//

#include "semiradius/bounds.hpp"
#include "semiradius/harness/instance.hpp"
#include "semiradius/numerical_radius.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace semiradius::harness {

/// Unreadable/unwritable file or malformed content.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

std::string instance_to_json(const Instance& inst);

/// Throws IoError on malformed JSON or a malformed matrix, and
/// Error(dimension_mismatch) when shapes disagree with each other or "dim".
Instance instance_from_json(const std::string& text);

inline void write_instance(const std::filesystem::path& path, const Instance& inst) {
    write_text(path, instance_to_json(inst));
}
inline Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_text(path)); }

/// Header `theta,re,im`; interior points carry theta = nan.
std::string range_cloud_csv(const RangeCloud<double>& cloud);

/// %.17g
std::string format_double(double v);

nlohmann::json to_json(const InstanceSpec& spec);
nlohmann::json to_json(const RadiusEstimate<double>& est);
nlohmann::json to_json(const OperatorParts<double>& parts);
nlohmann::json to_json(const BoundReport<double>& rep);
nlohmann::json to_json(const EqualityDiagnostic<double>& diag);
nlohmann::json to_json(const CommutatorComparison<double>& cmp);

} // namespace semiradius::harness
