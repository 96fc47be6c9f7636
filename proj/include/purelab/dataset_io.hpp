#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "purelab/experiments.hpp"

namespace purelab {

enum class DatasetFormat { csv, jsonl };

/// Serializes records to RFC-4180 CSV (header row, CRLF line ends, '.'
/// decimal separator, 17-significant-digit floats) or to JSON lines with
/// one record object per line. Both renderings are byte-deterministic.
std::string render_dataset(const std::vector<Fig1bRecord>& records, DatasetFormat format);
std::string render_dataset(const std::vector<MixerGridRecord>& records, DatasetFormat format);
std::string render_dataset(const std::vector<HbacRunRecord>& records, DatasetFormat format);
std::string render_dataset(const std::vector<DistillationRecord>& records, DatasetFormat format);

/// Run manifest: command, config, seed, record count, headline metrics,
/// and the library version, as a stable JSON document.
std::string render_manifest(const std::string& command, const nlohmann::ordered_json& config,
                            std::uint64_t seed, std::size_t record_count,
                            const nlohmann::ordered_json& metrics);

/// Writes content to path, throwing std::ios_base::failure on I/O errors.
void write_text_file(const std::string& path, const std::string& content);

/// 17-significant-digit decimal rendering used by the CSV output.
std::string format_double(double value);

}  // namespace purelab
