#include "dpg/manifest.h"

#include <cstdio>

#include "dpg/io.h"

namespace dpg {

Json RunManifest::ToJson() const {
  return {{"command", command},   {"inputs", inputs},
          {"outputs", outputs},   {"config", config},
          {"digest", digest},     {"tool_version", tool_version},
          {"wall_time_ms", wall_time_ms}};
}

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t hash) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string ComputeDigest(std::string_view command, const Json& config,
                          const std::vector<std::string>& inputs) {
  std::uint64_t h = Fnv1a64(command);
  h = Fnv1a64(std::string_view("\0", 1), h);
  h = Fnv1a64(config.dump(), h);
  for (const auto& path : inputs) {
    h = Fnv1a64(std::string_view("\0", 1), h);
    h = Fnv1a64(ReadFile(path), h);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path ManifestPathFor(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p += ".manifest.json";
  return p;
}

}  // namespace dpg
