#pragma once

#include "drg/feasibility.hpp"
#include "drg/graphs.hpp"
#include "drg/sweep.hpp"
#include "drg/talg.hpp"
#include "drg/uniform.hpp"

#include <json.hpp>

#include <string>

namespace drg {

// Reports are deterministic: ordered keys, exact values as "p/q" strings,
// decimal renderings explicitly marked approximate.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

Json json_exact(const Rat& r);

Json params_report(const ClassicalParams& cp);
Json feasibility_report(const FeasibilityReport& rep);
Json sweep_report(const SweepResult& res);
Json graph_report(const Graph& g, const DrgCheck& check);
Json modules_report(const TerwilligerContext& ctx, const Decomposition& dec);
Json uniform_report(const TerwilligerContext& ctx, const UniformVerdict& verdict);

// Re-ingest a serialized uniform solution (the witness of a "uniform"
// verdict) for re-validation.
UniformSolution uniform_solution_from_json(const Json& j);

enum class ReportFormat { json, csv, text };
ReportFormat parse_format(const std::string& s);

// Render a report in the requested format. CSV flattens scalar fields to
// key,value rows (the sweep uses one row per cell); text is a concise
// human-readable rendering.
std::string render(const Json& report, ReportFormat fmt);

} // namespace drg
