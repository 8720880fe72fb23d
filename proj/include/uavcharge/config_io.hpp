#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uavcharge/types.hpp"

namespace uavcharge {

/// Raised for malformed config text (unknown key, bad number, missing '=').
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` format, one entry per line, `#` starts a comment.
/// Keys not present keep their defaults. Numbers round-trip exactly.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Writes every field, so parse_config(format_config(c)) == c.
std::string format_config(const ScenarioConfig& config);

/// 64-bit FNV-1a of format_config; embedded in output provenance lines.
std::uint64_t config_hash(const ScenarioConfig& config);

std::string hex64(std::uint64_t value);

}  // namespace uavcharge
