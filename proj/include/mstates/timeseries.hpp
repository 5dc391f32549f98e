#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mstates {

/// Row-major so that each stock's series is contiguous.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Closing prices, one row per stock and one column per trading day.
struct PricePanel {
  std::vector<std::string> tickers;
  std::vector<std::string> dates;
  RowMatrix prices;
  /// ticker -> sector code; empty when no sidecar was supplied.
  std::map<std::string, std::string> sectors;

  std::size_t stock_count() const { return tickers.size(); }
  std::size_t day_count() const { return dates.size(); }
};

/// Simple daily returns. Column t is labelled by dates[t], the later day of
/// the (t, t+1) price pair.
struct ReturnPanel {
  std::vector<std::string> tickers;
  std::vector<std::string> dates;
  RowMatrix returns;

  std::size_t stock_count() const { return tickers.size(); }
  std::size_t day_count() const { return dates.size(); }
};

/// A contiguous window [day_begin, day_end) of a ReturnPanel.
struct Epoch {
  std::size_t index = 0;  // 1-based
  std::size_t day_begin = 0;
  std::size_t day_end = 0;
  std::string first_date;
  std::string last_date;
  RowMatrix returns;  // N x L copy of the window

  std::size_t length() const { return day_end - day_begin; }
};

struct LoadOptions {
  /// Drop tickers with empty cells instead of rejecting the file.
  bool drop_incomplete_tickers = false;
};

struct LoadReport {
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::vector<std::string> dropped_tickers;
};

/// Parses a wide CSV: a `date` column followed by one column per ticker.
/// Throws IngestError naming the offending ticker/date on any defect.
PricePanel load_prices(const std::filesystem::path& path,
                       const LoadOptions& options = {},
                       LoadReport* report = nullptr);

/// Same as load_prices but from in-memory CSV text (`source` is used in messages).
PricePanel parse_prices(const std::string& text, const std::string& source,
                        const LoadOptions& options = {},
                        LoadReport* report = nullptr);

/// Reads a two-column `ticker,sector` sidecar.
std::map<std::string, std::string> load_sectors(
    const std::filesystem::path& path);

/// Checks the PricePanel invariants (N >= 2, T >= 3, positive finite prices,
/// unique tickers, strictly increasing dates).
void validate(const PricePanel& panel);

ReturnPanel compute_returns(const PricePanel& panel);

/// Splits into floor(T'/length) non-overlapping epochs, dropping the trailing
/// remainder. Throws ValidationError when length is 0 or exceeds T'.
std::vector<Epoch> slice_epochs(const ReturnPanel& panel, std::size_t length);

/// Writes returns in the same wide-CSV layout as the price input.
void write_returns_csv(const ReturnPanel& panel,
                       const std::filesystem::path& path);

/// Reads a returns file written by write_returns_csv. Values may be any
/// finite number greater than -1.
ReturnPanel load_returns(const std::filesystem::path& path);

}  // namespace mstates
