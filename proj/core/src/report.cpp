#include "rrl/report.hpp"

#include <cstdio>

#include "rrl/errors.hpp"
#include "rrl/io.hpp"

namespace rrl {

namespace {

void check_key(const std::string& key) {
  if (key.empty()) fail(ErrorKind::InvalidDomain, "empty report key");
  for (char c : key)
    if (c == '=' || c == '\n')
      fail(ErrorKind::InvalidDomain, "report key may not contain '=' or newlines");
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void Report::put(const std::string& key, const std::string& value) {
  check_key(key);
  if (value.find('\n') != std::string::npos)
    fail(ErrorKind::InvalidDomain, "report value may not contain newlines");
  rows_.emplace_back(key, value);
}

void Report::put(const std::string& key, const char* value) { put(key, std::string(value)); }

void Report::put(const std::string& key, bool value) { put(key, std::string(value ? "true" : "false")); }

void Report::put(const std::string& key, std::int64_t value) { put(key, std::to_string(value)); }

void Report::put(const std::string& key, std::uint64_t value) { put(key, std::to_string(value)); }

void Report::put(const std::string& key, int value) { put(key, std::to_string(value)); }

void Report::put(const std::string& key, double value) { put(key, format_double(value)); }

void Report::put(const std::string& key, const Rational& value) { put(key, rational_string(value)); }

std::string Report::render() const {
  std::string out = "rrl-report 1\n";
  for (const auto& [key, value] : rows_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

void save_report(const std::string& path, const Report& report) {
  write_text_file(path, report.render());
}

}  // namespace rrl
