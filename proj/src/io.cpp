#include "ctd/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "ctd/core.hpp"

namespace ctd::io {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw DataError("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("rename failed for " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void for_each_jsonl(const fs::path& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& on_record) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": malformed record: " + e.what());
    }
    if (!record.is_object()) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": record is not an object");
    }
    try {
      on_record(record, line_number);
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
}

std::string required_string(const nlohmann::json& record, std::string_view field) {
  auto value = optional_string(record, field);
  if (!value) throw DataError("missing field '" + std::string(field) + "'");
  return *value;
}

std::optional<std::string> optional_string(const nlohmann::json& record,
                                           std::string_view field) {
  const auto it = record.find(field);
  if (it == record.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DataError("field '" + std::string(field) + "' is not a string");
  return it->get<std::string>();
}

void append_jsonl(std::string& out, const nlohmann::json& record) {
  out += record.dump();
  out += '\n';
}

}  // namespace ctd::io
