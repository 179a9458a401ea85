#pragma once

#include <json.hpp>

#include "tsa/audit.hpp"
#include "tsa/engine.hpp"
#include "tsa/scheme.hpp"

namespace tsa {

// Wire formats.  Elements serialize as [a, b] even in prime fields; fields as
// { "p": int, "degree": 1|2, "delta": int|null }; matrices row-major.
// The scheme file is the interchange unit between the build, verify, run,
// audit and search commands.

nlohmann::json field_to_json(const Field& f);
std::shared_ptr<const Field> field_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const FieldElement& x);
FieldElement element_from_json(const nlohmann::json& j, const std::shared_ptr<const Field>& f);

nlohmann::json elements_to_json(const std::vector<FieldElement>& xs);
std::vector<FieldElement> elements_from_json(const nlohmann::json& j,
                                             const std::shared_ptr<const Field>& f);

nlohmann::json topology_to_json(const Topology& t);
Topology topology_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::shared_ptr<const Field>& f);

nlohmann::json scheme_to_json(const Scheme& s);
Scheme scheme_from_json(const nlohmann::json& j);

nlohmann::json transcript_to_json(const Transcript& t);

nlohmann::json verification_report_to_json(const VerificationReport& r);
nlohmann::json audit_report_to_json(const AuditReport& r);
nlohmann::json search_result_to_json(const SearchResult& r, const Topology& t);

/// Parses with a ParseError instead of nlohmann's exception.
nlohmann::json parse_json(const std::string& text);

}  // namespace tsa
