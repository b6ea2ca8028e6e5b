#pragma once

#include <filesystem>

#include <json.hpp>

#include "lcr/experiment.hpp"
#include "lcr/mapper_coach.hpp"

namespace lcr {

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

nlohmann::json mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const nlohmann::json& j);

/// Model files hold both subnetworks plus a format version; round-trips are
/// byte-exact (sorted keys, shortest round-trip number formatting).
void save_model(const std::filesystem::path& path, const MapperCoachNet& net);
MapperCoachNet load_model(const std::filesystem::path& path);

nlohmann::json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const nlohmann::json& j);
void save_report(const std::filesystem::path& path, const EvaluationReport& report);
EvaluationReport load_report(const std::filesystem::path& path);

/// Parses a JSON document; wraps parse failures in FormatError and read
/// failures in IoError.
nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace lcr
