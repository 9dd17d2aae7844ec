#ifndef RBDA_JSON_UTIL_HPP
#define RBDA_JSON_UTIL_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "rbda/error.hpp"

namespace rbda::json_util {

using nlohmann::json;

std::string child(std::string_view path, std::string_view key);
std::string child(std::string_view path, std::size_t index);

const json& require(const json& object, std::string_view key, std::string_view path);
const json& require_object(const json& value, std::string_view path);
const json& require_array(const json& value, std::string_view path);
std::string require_string(const json& value, std::string_view path);
double require_number(const json& value, std::string_view path);
int require_integer(const json& value, std::string_view path);
bool require_bool(const json& value, std::string_view path);

json parse_text(std::string_view text, std::string_view what);
json read_file(const std::string& file);
void write_file_atomic(const std::string& file, std::string_view content);

/// Rounds to 6 significant digits so that serialized reports are stable
/// across platforms; negative zero is folded to zero.
double canonical_number(double value);

/// Sorted keys (nlohmann objects are ordered maps), two-space indent,
/// trailing newline.
std::string canonical_dump(const json& value);

}  // namespace rbda::json_util

#endif  // RBDA_JSON_UTIL_HPP
