#pragma once

#include "toric/family.hpp"
#include "toric/invariants.hpp"
#include "toric/problem.hpp"

#include <json.hpp>

namespace toric {

// Machine documents use insertion-ordered JSON and render every exact
// integer as a string, so output bytes are reproducible and re-ingestable
// without precision loss.
using ojson = nlohmann::ordered_json;

std::string int_str(const Int& v);

// Left-aligned column layout; first row is the header.
std::string format_table(const std::vector<std::vector<std::string>>& rows);

std::string function_to_string(const ToricFunction& fn);

ojson expr_json(const AffineExpr& e);
std::string expr_str(const AffineExpr& e);

ojson faces_json(const Cone& c, const std::vector<Face>& faces);
std::vector<std::vector<std::string>> faces_table(const Cone& c, const std::vector<Face>& faces);

ojson problem_echo_json(const ProblemFile& p, const Cone& c,
                        const std::map<std::string, ToricFunction>& functions);
std::vector<std::string> problem_echo_human(const ProblemFile& p, const Cone& c,
                                            const std::map<std::string, ToricFunction>& functions);

ojson term_rows_json(const std::vector<TermRow>& rows, bool ci);
std::vector<std::vector<std::string>> term_rows_table(const std::vector<TermRow>& rows, bool ci);

ojson invariant_report_json(const InvariantReport& rep);
void invariant_report_human(std::vector<std::string>& lines, const InvariantReport& rep);

ojson constancy_json(const ConstancyResult& r);
void constancy_human(std::vector<std::string>& lines, const std::string& role,
                     const ConstancyResult& r);

// Assemble the final document and serialize one of the two forms.
std::string render_document(const std::string& command, const ProblemFile& p, const Cone& c,
                            const std::map<std::string, ToricFunction>& functions,
                            const ojson& result, const std::vector<std::string>& result_human,
                            bool as_json);

} // namespace toric
