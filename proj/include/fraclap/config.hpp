#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fraclap {

/// Flat "key = value" text with optional [section] headers. '#' starts a
/// comment. Keys are addressed as "section.key" ("key" before any section).
/// Every error names the source and the line:column it refers to.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& source = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  /// Comma-separated list.
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<int> get_ints(const std::string& key) const;
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

  /// All keys of a section, without the "section." prefix.
  std::map<std::string, std::string> section(const std::string& name) const;
  bool has_section(const std::string& name) const;

  void set(const std::string& key, const std::string& value);
  /// Re-serialized text (sections sorted), used for manifests.
  std::string dump() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    int column = 0;
  };

  [[noreturn]] void bad_value(const std::string& key, const std::string& what) const;
  const Entry& entry(const std::string& key) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
};

}  // namespace fraclap
