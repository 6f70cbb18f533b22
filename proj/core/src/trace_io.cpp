#include "ampkit/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <openssl/sha.h>

#include "ampkit/errors.hpp"

namespace ampkit {

std::string git_blob_sha1(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(),
       digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA_DIGEST_LENGTH);
  for (unsigned char byte : digest) {
    out.push_back(hex[byte >> 4]);
    out.push_back(hex[byte & 0xF]);
  }
  return out;
}

std::string seed_list_hash(std::span<const std::uint64_t> seeds) {
  std::string joined;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i > 0) joined.push_back('\n');
    joined += std::to_string(seeds[i]);
  }
  return git_blob_sha1(joined);
}

std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_prelude(std::string_view config_json,
                        std::string_view seed_hash, std::string_view header) {
  std::string out;
  out += "# config ";
  out += config_json;
  out += "\n# seeds sha1 ";
  out += seed_hash;
  out += "\n";
  out += header;
  out += "\n";
  return out;
}

void write_trace_csv(const std::string& path, const Trace& trace,
                     std::size_t block_count, std::string_view config_json,
                     std::string_view seed_hash) {
  std::string header = "iteration,E";
  for (std::size_t b = 1; b <= block_count; ++b) {
    header += ",E_p_" + std::to_string(b);
  }
  header += ",delta,seconds";

  std::string body = csv_prelude(config_json, seed_hash, header);
  for (const TraceRow& row : trace.rows) {
    body += std::to_string(row.iteration);
    body.push_back(',');
    if (row.mse >= 0.0) body += format_double(row.mse);
    for (std::size_t b = 0; b < block_count; ++b) {
      body.push_back(',');
      if (b < row.block_mse.size()) body += format_double(row.block_mse[b]);
    }
    body.push_back(',');
    body += format_double(row.delta);
    body.push_back(',');
    body += format_double(row.seconds);
    body.push_back('\n');
  }
  write_text_file(path, body);
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for " + path);
}

}  // namespace ampkit
