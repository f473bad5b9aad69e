#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmr {

/// Shortest round-trip decimal representation ('.' decimal point).
std::string format_double(double v);

/// RFC 4180 writer: rows of cells, comma separated, LF line endings.
class CsvWriter {
 public:
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }
  void write_file(const std::string& path) const;

 private:
  std::string out_;
};

}  // namespace cmr
