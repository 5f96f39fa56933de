#include "lohe/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lohe {

namespace {

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void TimeSeries::add_channel(const std::string& name) {
  if (has(name)) return;
  if (!times_.empty())
    throw std::logic_error("TimeSeries: cannot add channel '" + name + "' after sampling");
  names_.push_back(name);
  columns_.emplace_back();
}

void TimeSeries::push(double t, const Sample& values) {
  if (!times_.empty() && !(t >= times_.back()))
    throw std::invalid_argument("TimeSeries: times must be non-decreasing");
  if (times_.empty())
    for (const auto& [name, v] : values) add_channel(name);
  times_.push_back(t);
  for (auto& col : columns_) col.push_back(std::numeric_limits<double>::quiet_NaN());
  for (const auto& [name, v] : values) columns_[index_of(name)].back() = v;
}

bool TimeSeries::has(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t TimeSeries::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("TimeSeries: unknown channel '" + name + "'");
  return std::size_t(it - names_.begin());
}

const std::vector<double>& TimeSeries::channel(const std::string& name) const {
  return columns_[index_of(name)];
}

void TimeSeries::write_csv(std::ostream& os) const {
  os << "time";
  for (const auto& n : names_) os << ',' << quote_field(n);
  os << "\r\n";
  for (std::size_t r = 0; r < times_.size(); ++r) {
    os << format_double(times_[r]);
    for (const auto& col : columns_) os << ',' << format_double(col[r]);
    os << "\r\n";
  }
}

void TimeSeries::write_csv(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("TimeSeries: cannot open '" + path + "' for writing");
  write_csv(os);
}

TimeSeries TimeSeries::read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("TimeSeries: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("TimeSeries: empty CSV");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "time")
    throw std::runtime_error("TimeSeries: first column must be 'time'");
  TimeSeries ts;
  for (std::size_t c = 1; c < header.size(); ++c) ts.add_channel(header[c]);
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::runtime_error("TimeSeries: ragged CSV row");
    Sample s;
    for (std::size_t c = 1; c < cells.size(); ++c) s.emplace_back(header[c], std::stod(cells[c]));
    ts.push(std::stod(cells[0]), s);
  }
  return ts;
}

}  // namespace lohe
