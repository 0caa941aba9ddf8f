#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "tits/group_input.hpp"

namespace tits {

inline constexpr const char* kVersion = "0.3.0";

/// Command-line settings; each one takes precedence over the matching file override.
struct RunOptions {
  std::optional<std::uint64_t> prime;
  std::optional<std::string> point;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> fast_path_bound;
  bool parallel = true;
};

/// Runs one decision and returns the report.
nlohmann::json run_decision(const GroupInput& in, const std::string& property, const RunOptions& opt = {});
/// Parsed descriptor, dimension, denominator datum and canonical generators.
nlohmann::json describe_group(const GroupInput& in);
/// The same input with every entry in canonical form.
GroupInput canonicalize(const GroupInput& in);

/// 0 = true, 1 = false, 2 = undecided.
int exit_code_for(const std::string& verdict);

}  // namespace tits
