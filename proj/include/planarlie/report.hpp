#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "planarlie/classify.hpp"

// JSON serialization of reports and transform chains.  Exact scalars are
// rendered as strings like "3/2+1/2*i"; no floats anywhere.

namespace planarlie {

nlohmann::json scalar_json(const GaussianRational& v);
nlohmann::json fingerprint_json(const InvariantFingerprint& fp);
nlohmann::json family_json(const CanonicalFamily& fam);
nlohmann::json transform_json(const PointTransform& t);
PointTransform transform_from_json(const nlohmann::json& j);

struct Report {
    std::string input_path;
    std::vector<std::string> fields;  // echoed canonical renderings
    bool closed = false;
    int dimension = 0;
    nlohmann::json closure;         // structure constants or the NotClosed witness
    nlohmann::json fingerprint;     // present when computed
    nlohmann::json classification;  // present for cmd_classify
    std::vector<std::string> diagnostics;
    double timing_ms = 0.0;

    nlohmann::json to_json(bool with_timing = true) const;
    std::string text() const;  // human-readable rendering
};

}  // namespace planarlie
