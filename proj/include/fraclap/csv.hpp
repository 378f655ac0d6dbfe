#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace fraclap::csv {

/// 17 significant digits, so values round-trip exactly.
std::string num(double value);

class Writer {
 public:
  Writer(const std::filesystem::path& path, const std::vector<std::string>& header);

  Writer& cell(const std::string& text);
  Writer& cell(double value);
  Writer& cell(long long value);
  Writer& cell(int value) { return cell(static_cast<long long>(value)); }
  Writer& cell(std::size_t value) { return cell(static_cast<long long>(value)); }
  void end_row();

 private:
  std::ofstream os_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::filesystem::path path_;
};

}  // namespace fraclap::csv
