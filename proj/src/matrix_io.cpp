#include "mstates/matrix_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "mstates/error.hpp"

namespace mstates {

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                 value);
  if (ec != std::errc{}) throw NumericError("cannot format double");
  return std::string(buffer.data(), end);
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc{} || end != text.data() + text.size())
    return std::nullopt;
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return std::string_view{};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
  };
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(trim(line.substr(start)));
      break;
    }
    fields.emplace_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_matrix_file(const std::filesystem::path& path,
                       const nlohmann::json& header,
                       const Eigen::MatrixXd& values) {
  std::string text = "# " + header.dump() + "\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) text += ',';
      text += format_double(values(i, j));
    }
    text += '\n';
  }
  write_file(path, text);
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw ValidationError(path.string() + ": missing JSON header line");

  MatrixFile file;
  try {
    file.header = nlohmann::json::parse(line.substr(2));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": bad header: " + e.what());
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    for (const auto& field : split_csv_line(line)) {
      auto value = parse_double(field);
      if (!value)
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": not a number: '" + field + "'");
      row.push_back(*value);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": ragged row");
    rows.push_back(std::move(row));
  }

  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols =
      rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows[0].size());
  file.values.resize(n_rows, n_cols);
  for (Eigen::Index i = 0; i < n_rows; ++i)
    for (Eigen::Index j = 0; j < n_cols; ++j)
      file.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return file;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length,
                 EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_file(path));
}

}  // namespace mstates
