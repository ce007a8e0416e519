#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bubble {

/// Hex-encoded SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

struct InputRecord {
    std::string path;
    std::string sha256;
};

/// Audit record for one CLI invocation: what ran, on which inputs (content
/// digests are recomputable), with which parameters, producing which files.
struct RunManifest {
    std::string command;
    std::vector<InputRecord> inputs;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
    std::string tool_version;
};

/// Reads a file and records its digest.
InputRecord digest_input(const std::filesystem::path& path);

struct ReportFile {
    std::string name;   // relative to the bundle directory
    std::string bytes;  // already serialized
};

/// Writes a report bundle: every file plus manifest.json listing them all.
/// Identical inputs produce byte-identical bundles.
void write_report(const std::filesystem::path& dir, RunManifest manifest,
                  const std::vector<ReportFile>& files);

}  // namespace bubble
