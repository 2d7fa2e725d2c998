#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ctd::io {

// Writes `contents` to a sibling temp file and renames it over `path`,
// so readers never observe a partial file. Creates parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

// Calls `on_record(record, line_number)` for every non-blank line.
// Throws DataError("<path>:<line>: ...") on unreadable files or bad JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& on_record);

// Field accessors; for_each_jsonl prefixes their errors with the line number.
std::string required_string(const nlohmann::json& record, std::string_view field);
std::optional<std::string> optional_string(const nlohmann::json& record,
                                           std::string_view field);

// Appends one compact JSON record plus '\n'.
void append_jsonl(std::string& out, const nlohmann::json& record);

}  // namespace ctd::io
