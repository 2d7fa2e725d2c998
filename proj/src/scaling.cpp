#include "ctd/scaling.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <utility>
#include <vector>

namespace ctd {

namespace {

struct KnownModel {
  std::string_view tag;
  std::string_view name;
  std::uint64_t parameters;
};

constexpr std::array<KnownModel, 5> kFlanT5 = {{
    {"flan-t5-small", "FLAN-T5-Small", 60'000'000},
    {"flan-t5-base", "FLAN-T5-Base", 250'000'000},
    {"flan-t5-large", "FLAN-T5-Large", 780'000'000},
    {"flan-t5-xl", "FLAN-T5-XL", 3'000'000'000},
    {"flan-t5-xxl", "FLAN-T5-XXL", 11'000'000'000},
}};

const KnownModel* find_model(std::string_view tag) {
  std::string lowered(tag);
  for (auto& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const auto& model : kFlanT5) {
    if (model.tag == lowered) return &model;
  }
  return nullptr;
}

std::string trim_decimal(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.1f", value);
  std::string text = buffer;
  if (text.ends_with(".0")) text.resize(text.size() - 2);
  return text;
}

}  // namespace

std::optional<std::uint64_t> known_parameter_count(std::string_view model_tag) {
  if (const auto* model = find_model(model_tag)) return model->parameters;
  return std::nullopt;
}

std::string display_name(std::string_view model_tag) {
  if (const auto* model = find_model(model_tag)) return std::string(model->name);
  return std::string(model_tag);
}

std::string format_parameter_count(std::uint64_t parameters) {
  const auto p = static_cast<double>(parameters);
  if (parameters >= 1'000'000'000) return trim_decimal(p / 1e9) + "B";
  if (parameters >= 1'000'000) return trim_decimal(p / 1e6) + "M";
  if (parameters >= 1'000) return trim_decimal(p / 1e3) + "K";
  return std::to_string(parameters);
}

std::string scaling_report(std::span<const ScalingEntry> entries) {
  std::vector<std::pair<std::optional<std::uint64_t>, const ScalingEntry*>> rows;
  rows.reserve(entries.size());
  for (const auto& entry : entries) {
    rows.emplace_back(entry.parameters ? entry.parameters : known_parameter_count(entry.model_tag),
                      &entry);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first.has_value() != b.first.has_value()) return a.first.has_value();
    return a.first.has_value() && *a.first < *b.first;
  });

  std::string out = "| Model | # params | Runtime (s) | Mean F1 |\n|---|---|---|---|\n";
  char buffer[64];
  for (const auto& [parameters, entry] : rows) {
    out += "| " + display_name(entry->model_tag) + " | ";
    out += parameters ? format_parameter_count(*parameters) : "?";
    std::snprintf(buffer, sizeof buffer, " | %.3f | %.3f |\n", entry->runtime_seconds,
                  entry->mean_f1);
    out += buffer;
  }
  return out;
}

}  // namespace ctd
