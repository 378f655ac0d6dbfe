#include "fraclap/csv.hpp"

#include <cmath>
#include <cstdio>

#include "fraclap/error.hpp"

namespace fraclap::csv {

std::string num(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Writer::Writer(const std::filesystem::path& path, const std::vector<std::string>& header)
    : os_(path), columns_(header.size()), path_(path) {
  require(static_cast<bool>(os_), ErrorKind::Io, "cannot open " + path.string() + " for writing");
  for (const auto& h : header) cell(h);
  end_row();
}

Writer& Writer::cell(const std::string& text) {
  if (in_row_++) os_ << ',';
  const bool quote = text.find_first_of(",\"\n") != std::string::npos;
  if (!quote) {
    os_ << text;
  } else {
    os_ << '"';
    for (char ch : text) os_ << (ch == '"' ? "\"\"" : std::string(1, ch));
    os_ << '"';
  }
  return *this;
}

Writer& Writer::cell(double value) { return cell(num(value)); }
Writer& Writer::cell(long long value) { return cell(std::to_string(value)); }

void Writer::end_row() {
  require(in_row_ == columns_, ErrorKind::InvalidArgument,
          "CSV row for " + path_.string() + " has " + std::to_string(in_row_) + " cells, expected " +
              std::to_string(columns_));
  os_ << '\n';
  in_row_ = 0;
  require(static_cast<bool>(os_), ErrorKind::Io, "write failed for " + path_.string());
}

}  // namespace fraclap::csv
