#include "rbda/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rbda {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::schema: return "schema";
    case ErrorKind::invariant: return "invariant";
    case ErrorKind::reference: return "reference";
    case ErrorKind::duplicate: return "duplicate";
    case ErrorKind::domain: return "domain";
    case ErrorKind::stage: return "stage";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::degenerate_conditioning: return "degenerate_conditioning";
    case ErrorKind::unbounded: return "unbounded";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::io: return "io";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

}  // namespace rbda

namespace rbda::json_util {

std::string child(std::string_view path, std::string_view key) {
  std::string out(path);
  out += '/';
  out += key;
  return out;
}

std::string child(std::string_view path, std::size_t index) {
  return child(path, std::to_string(index));
}

namespace {

[[noreturn]] void schema_error(std::string_view path, const std::string& what) {
  std::string where = path.empty() ? std::string("/") : std::string(path);
  throw Error(ErrorKind::schema, where, where + ": " + what);
}

}  // namespace

const json& require(const json& object, std::string_view key, std::string_view path) {
  require_object(object, path);
  auto it = object.find(std::string(key));
  if (it == object.end()) schema_error(child(path, key), "missing required field");
  return *it;
}

const json& require_object(const json& value, std::string_view path) {
  if (!value.is_object()) schema_error(path, "expected an object");
  return value;
}

const json& require_array(const json& value, std::string_view path) {
  if (!value.is_array()) schema_error(path, "expected an array");
  return value;
}

std::string require_string(const json& value, std::string_view path) {
  if (!value.is_string()) schema_error(path, "expected a string");
  return value.get<std::string>();
}

double require_number(const json& value, std::string_view path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  double out = value.get<double>();
  if (!std::isfinite(out)) schema_error(path, "expected a finite number");
  return out;
}

int require_integer(const json& value, std::string_view path) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_number_float()) {
    double v = value.get<double>();
    if (std::isfinite(v) && v == std::floor(v)) return static_cast<int>(v);
  }
  schema_error(path, "expected an integer");
}

bool require_bool(const json& value, std::string_view path) {
  if (!value.is_boolean()) schema_error(path, "expected a boolean");
  return value.get<bool>();
}

json parse_text(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, "/", std::string(what) + ": malformed JSON: " + e.what());
  }
}

json read_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, file, "cannot open " + file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), file);
}

void write_file_atomic(const std::string& file, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path target(file);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, file, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::io, file, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorKind::io, file, "cannot rename into " + file + ": " + ec.message());
}

double canonical_number(double value) {
  if (!std::isfinite(value)) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  double out = std::strtod(buf, nullptr);
  return out == 0.0 ? 0.0 : out;
}

std::string canonical_dump(const json& value) {
  return value.dump(2) + "\n";
}

}  // namespace rbda::json_util
