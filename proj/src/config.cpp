#include "fraclap/config.hpp"

#include <fstream>
#include <sstream>

#include "fraclap/error.hpp"

namespace fraclap {
namespace {

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    if (lead) *lead = s.size();
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

[[noreturn]] void parse_fail(const std::string& source, int line, int col, const std::string& msg) {
  fail(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string body = trim(line, &lead);
    if (body.empty()) continue;
    const int col = static_cast<int>(lead) + 1;
    if (body.front() == '[') {
      if (body.back() != ']') parse_fail(source, lineno, col, "section header is missing ']'");
      section = trim(body.substr(1, body.size() - 2));
      if (!valid_name(section)) parse_fail(source, lineno, col + 1, "invalid section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      parse_fail(source, lineno, static_cast<int>(line.find_last_not_of(" \t\r")) + 2, "expected '=' after key");
    const std::string key = trim(line.substr(0, eq));
    if (!valid_name(key)) parse_fail(source, lineno, col, "invalid key '" + key + "'");
    std::size_t vlead = 0;
    const std::string value = trim(line.substr(eq + 1), &vlead);
    const int vcol = static_cast<int>(eq + 1 + vlead) + 1;
    if (value.empty()) parse_fail(source, lineno, vcol, "empty value for key '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.entries_.count(full)) parse_fail(source, lineno, col, "duplicate key '" + full + "'");
    cfg.entries_[full] = {value, lineno, vcol};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::Parse, path.string() + ":0:0: cannot open config file");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str(), path.string());
}

const Config::Entry& Config::entry(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorKind::Parse, source_ + ": missing required key '" + key + "'");
  return it->second;
}

void Config::bad_value(const std::string& key, const std::string& what) const {
  const Entry& e = entry(key);
  parse_fail(source_, e.line, e.column, "key '" + key + "': " + what + ", got '" + e.value + "'");
}

std::string Config::get_string(const std::string& key) const { return entry(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const std::string& v = entry(key).value;
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  bad_value(key, "expected a number");
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const std::string& v = entry(key).value;
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  bad_value(key, "expected an integer");
}

int Config::get_int(const std::string& key, int fallback) const { return has(key) ? get_int(key) : fallback; }

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(entry(key).value)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) bad_value(key, "expected a comma-separated list of numbers");
    } catch (const std::logic_error&) {
      bad_value(key, "expected a comma-separated list of numbers");
    }
  }
  return out;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? get_doubles(key) : fallback;
}

std::vector<int> Config::get_ints(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(entry(key).value)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) bad_value(key, "expected a comma-separated list of integers");
    } catch (const std::logic_error&) {
      bad_value(key, "expected a comma-separated list of integers");
    }
  }
  return out;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) const {
  return has(key) ? get_ints(key) : fallback;
}

std::map<std::string, std::string> Config::section(const std::string& name) const {
  std::map<std::string, std::string> out;
  const std::string prefix = name + ".";
  for (const auto& [k, e] : entries_)
    if (k.compare(0, prefix.size(), prefix) == 0 && k.find('.', prefix.size()) == std::string::npos)
      out[k.substr(prefix.size())] = e.value;
  return out;
}

bool Config::has_section(const std::string& name) const { return !section(name).empty(); }

void Config::set(const std::string& key, const std::string& value) { entries_[key] = {value, 0, 0}; }

std::string Config::dump() const {
  std::ostringstream os;
  std::string current;
  for (const auto& [k, e] : entries_)
    if (k.find('.') == std::string::npos) os << k << " = " << e.value << '\n';
  for (const auto& [k, e] : entries_) {
    const auto dot = k.find('.');
    if (dot == std::string::npos) continue;
    const std::string sec = k.substr(0, dot);
    if (sec != current) {
      os << "\n[" << sec << "]\n";
      current = sec;
    }
    os << k.substr(dot + 1) << " = " << e.value << '\n';
  }
  return os.str();
}

}  // namespace fraclap
