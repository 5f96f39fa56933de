// Named real-valued channels sampled along a trajectory; the unit of CSV output.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lohe {

class TimeSeries {
 public:
  using Sample = std::vector<std::pair<std::string, double>>;

  // Declares a channel up front; channels declared after samples exist are
  // rejected, so every channel has the same length as times().
  void add_channel(const std::string& name);

  // Appends one time with values for a subset of channels. Unknown names are
  // declared on the first sample; missing channels get NaN.
  void push(double t, const Sample& values);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool has(const std::string& name) const;
  const std::vector<double>& channel(const std::string& name) const;
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  // RFC-4180 CSV: header row, time column first, CRLF line ends, %.17g values.
  void write_csv(std::ostream& os) const;
  void write_csv(const std::string& path) const;
  static TimeSeries read_csv(const std::string& path);

 private:
  std::size_t index_of(const std::string& name) const;

  std::vector<double> times_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

}  // namespace lohe
