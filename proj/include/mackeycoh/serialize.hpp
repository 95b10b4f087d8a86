#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "mackeycoh/cohomology.hpp"
#include "mackeycoh/grading.hpp"
#include "mackeycoh/mackey.hpp"

namespace mackeycoh {

using Json = nlohmann::json;

// Schema: {"p", "n", "levels": [{"rank", "torsion": [...]}, ...],
//          "res": [matrix, ...], "tr": [matrix, ...]}
// with levels bottom (index 0) to top, matrices row-major as nested arrays,
// torsion entries reduced.  Integer entries that do not fit in 64 bits are
// written as decimal strings; the parser accepts both forms.
Json functor_to_json(const MackeyFunctor& m);
// Rebuilds through the validating constructor; throws ParseError on a
// malformed document and InvalidDiagram on a well-formed non-diagram.
MackeyFunctor functor_from_json(const Json& j);

// {"n", "c", "a": [...]}; from_json is the exact inverse.
Json grading_to_json(const Grading& g);
Grading grading_from_json(const Json& j);

// One stored computation.  The key is (p, n, normalized grading text as
// produced by Grading::render); value is the diagram or absent for an
// Unknown outcome; version is engine_version() at computation time.
struct ResultRecord {
    long long p = 0;
    int n = 0;
    std::string grading;
    std::optional<MackeyFunctor> value;
    std::string reason;  // set when value is absent
    std::vector<TraceEntry> trace;
    std::string version;

    bool operator==(const ResultRecord&) const = default;
};

ResultRecord make_record(long long p, int n, const Grading& g,
                         const CohomResult& r);

// {"p", "n", "grading", "value": <functor json> | "unknown",
//  "reason"?: str, "trace": [{"rule","paper_ref","subquery"}, ...],
//  "version": str}
Json record_to_json(const ResultRecord& r);
ResultRecord record_from_json(const Json& j);

}  // namespace mackeycoh
