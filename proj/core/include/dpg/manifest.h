#ifndef DPG_MANIFEST_H_
#define DPG_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dpg/ensemble.h"

namespace dpg {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Record of one CLI run, written next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Json config = Json::object();
  // FNV-1a 64 over command, config and input file bytes, as 16 hex digits.
  std::string digest;
  std::string tool_version{kToolVersion};
  double wall_time_ms = 0.0;

  Json ToJson() const;
};

std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t hash = 0xcbf29ce484222325ULL);

// Digest over the command name, the config dump and the contents of every
// input file, in order. Independent of paths' spelling and of wall time.
std::string ComputeDigest(std::string_view command, const Json& config,
                          const std::vector<std::string>& inputs);

// "<output>.manifest.json"
std::filesystem::path ManifestPathFor(const std::filesystem::path& output);

}  // namespace dpg

#endif  // DPG_MANIFEST_H_
