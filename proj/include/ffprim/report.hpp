#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "ffprim/criteria.hpp"

namespace ffprim {

inline const char* library_version() { return "0.1.0"; }
inline constexpr int kReportSchemaVersion = 1;

void to_json(nlohmann::json& j, const SieveConfig& c);
void to_json(nlohmann::json& j, const CriterionReport& r);
void to_json(nlohmann::json& j, const PairClass& c);
void to_json(nlohmann::json& j, const Verdict& v);

/// One persisted line per CLI run: {schema, command, inputs, verdict, report,
/// wall_ms, version}.
nlohmann::json make_run_record(const std::string& command, nlohmann::json inputs,
                               nlohmann::json payload, double wall_ms);

void append_jsonl(const std::filesystem::path& file, const nlohmann::json& record);

std::string verdict_kind_label(Verdict::Kind k);

}  // namespace ffprim
