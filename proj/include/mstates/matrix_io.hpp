#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace mstates {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Strict decimal parse; nullopt on empty input or trailing characters.
std::optional<double> parse_double(std::string_view text);

/// Splits one CSV line on commas and trims surrounding whitespace.
/// Quoting is not supported; none of the formats here need it.
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a whole file, throwing ValidationError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes text atomically enough for our purposes (truncate + write).
void write_file(const std::filesystem::path& path, std::string_view text);

/// Matrix file: a first line `# {json header}` followed by plain CSV rows.
struct MatrixFile {
  nlohmann::json header;
  Eigen::MatrixXd values;
};

void write_matrix_file(const std::filesystem::path& path,
                       const nlohmann::json& header,
                       const Eigen::MatrixXd& values);

MatrixFile read_matrix_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a byte string / file.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace mstates
