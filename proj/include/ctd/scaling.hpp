#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ctd {

struct ScalingEntry {
  std::string model_tag;
  double mean_f1 = 0.0;
  double runtime_seconds = 0.0;  // per item
  // Overrides the built-in size table; required for tags outside the FLAN-T5 family.
  std::optional<std::uint64_t> parameters;
};

// Parameter counts of the FLAN-T5 family by tag ("flan-t5-xl", case-insensitive).
std::optional<std::uint64_t> known_parameter_count(std::string_view model_tag);

// "FLAN-T5-XL" for known tags, the tag itself otherwise.
std::string display_name(std::string_view model_tag);

// "60M", "3B", "18.8M".
std::string format_parameter_count(std::uint64_t parameters);

// Markdown table | Model | # params | Runtime (s) | Mean F1 |, rows ascending by parameter
// count; rows of unknown size come last in input order.
std::string scaling_report(std::span<const ScalingEntry> entries);

}  // namespace ctd
