#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "modspace/corpus.hpp"
#include "modspace/inequality.hpp"
#include "modspace/mod_norm.hpp"
#include "modspace/partition.hpp"
#include "modspace/weight_class.hpp"
#include "modspace/weight_sequence.hpp"

namespace modspace {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// ADL serializers so `nlohmann::json j = value;` works for report types.
void to_json(nlohmann::json& j, const ConditionResult& v);
void to_json(nlohmann::json& j, const IndexEstimate& v);
void to_json(nlohmann::json& j, const Thresholds& v);
void to_json(nlohmann::json& j, const ClassReport& v);
void to_json(nlohmann::json& j, const SubadditivityCertificate& v);
void to_json(nlohmann::json& j, const SubadditivityViolation& v);
void to_json(nlohmann::json& j, const DoublingResult& v);
void to_json(nlohmann::json& j, const SeriesProxy& v);
void to_json(nlohmann::json& j, const WeightSequence& v);
void to_json(nlohmann::json& j, const LowerBoundResult& v);
void to_json(nlohmann::json& j, const PartitionProperties& v);
void to_json(nlohmann::json& j, const NormResult& v);
void to_json(nlohmann::json& j, const EmbeddingRow& v);
void to_json(nlohmann::json& j, const DerivativeGrowth& v);
void to_json(nlohmann::json& j, const AlgebraEntry& v);
void to_json(nlohmann::json& j, const SuperpositionReport& v);
void to_json(nlohmann::json& j, const ContinuityReport& v);
void to_json(nlohmann::json& j, const ConstantsReport& v);
void to_json(nlohmann::json& j, const DecayFit& v);
void to_json(nlohmann::json& j, const MeasureConditionReport& v);

//! Non-finite numbers serialized as the strings "inf", "-inf", "nan" so the
//! emitted JSON stays standard-conforming without losing the values.
nlohmann::json sanitize_json(nlohmann::json j);

//! Common envelope: schema_version, command, and a `generated` block that
//! isolates the timestamp so content hashes can skip it.
nlohmann::json report_envelope(const std::string& command);

//! Serializes (sanitized, 2-space indent) and writes atomically: the
//! payload lands in a sibling temp file first, then renames into place.
void write_json_report(const std::filesystem::path& path,
                       const nlohmann::json& report);

//! Numeric CSV with full round-trip precision, written atomically.
void write_csv_report(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

}  // namespace modspace
