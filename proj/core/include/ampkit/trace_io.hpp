#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "ampkit/amp.hpp"

namespace ampkit {

/// git-style content hash: sha1("blob <len>\0" + content), lowercase hex.
std::string git_blob_sha1(std::string_view content);

/// Hash of a seed list (decimal values joined by newlines).
std::string seed_list_hash(std::span<const std::uint64_t> seeds);

/// Writes a trace as CSV. Two comment lines embed the full resolved config
/// and the seed-list hash, then a header row
///   iteration,E,E_p_1..E_p_<blocks>,delta,seconds
/// E columns are left empty when the run had no reference signal.
void write_trace_csv(const std::string& path, const Trace& trace,
                     std::size_t block_count, std::string_view config_json,
                     std::string_view seed_hash);

/// CSV prelude shared by all output files: the two comment lines plus a
/// caller-supplied header row.
std::string csv_prelude(std::string_view config_json,
                        std::string_view seed_hash, std::string_view header);

void write_text_file(const std::string& path, std::string_view content);

/// Canonical formatting for floating-point CSV/JSON payload values:
/// shortest round-trip representation.
std::string format_double(double value);

}  // namespace ampkit
