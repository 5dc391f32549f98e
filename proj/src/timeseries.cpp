#include "mstates/timeseries.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "mstates/error.hpp"
#include "mstates/matrix_io.hpp"

namespace mstates {

namespace {

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // each row has header.size() cells
};

RawTable parse_table(const std::string& text, const std::string& source) {
  RawTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size())
      throw IngestError(source + ": line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " cells, expected " +
                        std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw IngestError(source + ": empty file");
  return table;
}

void check_header(const RawTable& table, const std::string& source) {
  if (table.header.front() != "date")
    throw IngestError(source + ": first column must be 'date', got '" +
                      table.header.front() + "'");
  std::set<std::string> seen;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    const auto& ticker = table.header[c];
    if (ticker.empty())
      throw IngestError(source + ": empty ticker name in column " +
                        std::to_string(c + 1));
    if (!seen.insert(ticker).second)
      throw IngestError(source + ": duplicate ticker '" + ticker + "'");
  }
}

void check_dates(const std::vector<std::string>& dates,
                 const std::string& source) {
  for (std::size_t t = 0; t < dates.size(); ++t) {
    if (dates[t].empty())
      throw IngestError(source + ": empty date in data row " +
                        std::to_string(t + 1));
    if (t > 0 && !(dates[t - 1] < dates[t]))
      throw IngestError(source + ": dates not strictly increasing at '" +
                        dates[t] + "' (after '" + dates[t - 1] + "')");
  }
}

}  // namespace

PricePanel parse_prices(const std::string& text, const std::string& source,
                        const LoadOptions& options, LoadReport* report) {
  const RawTable table = parse_table(text, source);
  check_header(table, source);

  PricePanel panel;
  for (const auto& row : table.rows) panel.dates.push_back(row[0]);
  check_dates(panel.dates, source);

  std::vector<std::size_t> kept_columns;
  std::vector<std::string> dropped;
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    bool complete = true;
    for (const auto& row : table.rows) {
      if (row[c].empty()) {
        if (!options.drop_incomplete_tickers)
          throw IngestError(source + ": missing price for ticker '" +
                            table.header[c] + "' on date '" + row[0] + "'");
        complete = false;
        break;
      }
    }
    if (complete)
      kept_columns.push_back(c);
    else
      dropped.push_back(table.header[c]);
  }

  const auto n = static_cast<Eigen::Index>(kept_columns.size());
  const auto t_count = static_cast<Eigen::Index>(table.rows.size());
  panel.prices.resize(n, t_count);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t c = kept_columns[static_cast<std::size_t>(i)];
    panel.tickers.push_back(table.header[c]);
    for (Eigen::Index t = 0; t < t_count; ++t) {
      const auto& row = table.rows[static_cast<std::size_t>(t)];
      const auto value = parse_double(row[c]);
      if (!value)
        throw IngestError(source + ": unparsable price '" + row[c] +
                          "' for ticker '" + table.header[c] + "' on date '" +
                          row[0] + "'");
      if (!std::isfinite(*value) || *value <= 0.0)
        throw IngestError(source + ": non-positive price " + row[c] +
                          " for ticker '" + table.header[c] + "' on date '" +
                          row[0] + "'");
      panel.prices(i, t) = *value;
    }
  }

  validate(panel);
  if (report) {
    report->rows = panel.day_count();
    report->columns = panel.stock_count();
    report->dropped_tickers = std::move(dropped);
  }
  return panel;
}

PricePanel load_prices(const std::filesystem::path& path,
                       const LoadOptions& options, LoadReport* report) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const ValidationError& e) {
    throw IngestError(e.what());
  }
  return parse_prices(text, path.string(), options, report);
}

std::map<std::string, std::string> load_sectors(
    const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const ValidationError& e) {
    throw IngestError(e.what());
  }
  const RawTable table = parse_table(text, path.string());
  if (table.header.size() != 2 || table.header[0] != "ticker" ||
      table.header[1] != "sector")
    throw IngestError(path.string() + ": sector sidecar header must be 'ticker,sector'");
  std::map<std::string, std::string> sectors;
  for (const auto& row : table.rows) {
    if (row[0].empty() || row[1].empty())
      throw IngestError(path.string() + ": empty ticker or sector");
    if (!sectors.emplace(row[0], row[1]).second)
      throw IngestError(path.string() + ": duplicate ticker '" + row[0] + "'");
  }
  return sectors;
}

void validate(const PricePanel& panel) {
  if (panel.stock_count() < 2)
    throw IngestError("price panel needs at least 2 stocks, got " +
                      std::to_string(panel.stock_count()));
  if (panel.day_count() < 3)
    throw IngestError("price panel needs at least 3 days, got " +
                      std::to_string(panel.day_count()));
  if (static_cast<std::size_t>(panel.prices.rows()) != panel.stock_count() ||
      static_cast<std::size_t>(panel.prices.cols()) != panel.day_count())
    throw IngestError("price matrix shape does not match ticker/date labels");
  std::set<std::string> seen;
  for (const auto& ticker : panel.tickers)
    if (!seen.insert(ticker).second)
      throw IngestError("duplicate ticker '" + ticker + "'");
  check_dates(panel.dates, "price panel");
  for (Eigen::Index i = 0; i < panel.prices.rows(); ++i)
    for (Eigen::Index t = 0; t < panel.prices.cols(); ++t) {
      const double p = panel.prices(i, t);
      if (!std::isfinite(p) || p <= 0.0)
        throw IngestError("non-positive price for ticker '" +
                          panel.tickers[static_cast<std::size_t>(i)] +
                          "' on date '" +
                          panel.dates[static_cast<std::size_t>(t)] + "'");
    }
}

ReturnPanel compute_returns(const PricePanel& panel) {
  validate(panel);
  ReturnPanel out;
  out.tickers = panel.tickers;
  out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
  const Eigen::Index n = panel.prices.rows();
  const Eigen::Index days = panel.prices.cols() - 1;
  out.returns.resize(n, days);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index t = 0; t < days; ++t) {
      const double prev = panel.prices(i, t);
      out.returns(i, t) = (panel.prices(i, t + 1) - prev) / prev;
    }
  return out;
}

std::vector<Epoch> slice_epochs(const ReturnPanel& panel, std::size_t length) {
  const std::size_t days = panel.day_count();
  if (length == 0)
    throw ValidationError("epoch length must be positive");
  if (length > days)
    throw ValidationError("epoch length " + std::to_string(length) +
                          " exceeds the " + std::to_string(days) +
                          " available return days");
  const std::size_t count = days / length;
  std::vector<Epoch> epochs;
  epochs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Epoch epoch;
    epoch.index = k + 1;
    epoch.day_begin = k * length;
    epoch.day_end = epoch.day_begin + length;
    epoch.first_date = panel.dates[epoch.day_begin];
    epoch.last_date = panel.dates[epoch.day_end - 1];
    epoch.returns = panel.returns.middleCols(
        static_cast<Eigen::Index>(epoch.day_begin),
        static_cast<Eigen::Index>(length));
    epochs.push_back(std::move(epoch));
  }
  return epochs;
}

void write_returns_csv(const ReturnPanel& panel,
                       const std::filesystem::path& path) {
  std::string text = "date";
  for (const auto& ticker : panel.tickers) text += "," + ticker;
  text += '\n';
  for (std::size_t t = 0; t < panel.day_count(); ++t) {
    text += panel.dates[t];
    for (std::size_t i = 0; i < panel.stock_count(); ++i) {
      text += ',';
      text += format_double(panel.returns(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(t)));
    }
    text += '\n';
  }
  write_file(path, text);
}

ReturnPanel load_returns(const std::filesystem::path& path) {
  const std::string source = path.string();
  const RawTable table = parse_table(read_file(path), source);
  check_header(table, source);

  ReturnPanel panel;
  panel.tickers.assign(table.header.begin() + 1, table.header.end());
  for (const auto& row : table.rows) panel.dates.push_back(row[0]);
  check_dates(panel.dates, source);
  if (panel.dates.empty())
    throw ValidationError(source + ": no return rows");

  const auto n = static_cast<Eigen::Index>(panel.tickers.size());
  const auto days = static_cast<Eigen::Index>(panel.dates.size());
  panel.returns.resize(n, days);
  for (Eigen::Index t = 0; t < days; ++t) {
    const auto& row = table.rows[static_cast<std::size_t>(t)];
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& cell = row[static_cast<std::size_t>(i) + 1];
      const auto value = parse_double(cell);
      if (!value || !std::isfinite(*value) || *value <= -1.0)
        throw ValidationError(source + ": invalid return '" + cell +
                              "' for ticker '" +
                              panel.tickers[static_cast<std::size_t>(i)] +
                              "' on date '" + row[0] + "'");
      panel.returns(i, t) = *value;
    }
  }
  return panel;
}

}  // namespace mstates
