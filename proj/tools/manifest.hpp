#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace jointdrop::cli {

std::string Sha256File(const std::filesystem::path& path);

// Run manifest: everything needed to reproduce one invocation. The "config"
// object uses flag names as keys, so the manifest itself can be passed back
// with --config.
nlohmann::ordered_json BuildManifest(std::string_view subcommand,
                                     const nlohmann::ordered_json& config,
                                     const std::vector<std::filesystem::path>& inputs,
                                     std::optional<std::uint64_t> seed);

void WriteJson(const std::filesystem::path& path, const nlohmann::ordered_json& value);

// Reads a flat JSON object of flag values. A manifest is accepted too, in
// which case its "config" member is used.
nlohmann::json LoadConfigFile(const std::filesystem::path& path);

// Turns {"rate": 0.3, "strict": true} into {"--rate", "0.3", "--strict"}.
std::vector<std::string> ConfigToArgs(const nlohmann::json& config);

}  // namespace jointdrop::cli
