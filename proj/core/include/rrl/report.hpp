#ifndef RRL_REPORT_HPP
#define RRL_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rrl/rational.hpp"

namespace rrl {

// Flat key-value report; rendering is deterministic (insertion order,
// %.17g doubles) so byte comparison works as a regression check.
class Report {
 public:
  void put(const std::string& key, const std::string& value);
  void put(const std::string& key, const char* value);
  void put(const std::string& key, bool value);
  void put(const std::string& key, std::int64_t value);
  void put(const std::string& key, std::uint64_t value);
  void put(const std::string& key, int value);
  void put(const std::string& key, double value);
  void put(const std::string& key, const Rational& value);

  const std::vector<std::pair<std::string, std::string>>& rows() const { return rows_; }
  std::string render() const;

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string format_double(double value);

void save_report(const std::string& path, const Report& report);

}  // namespace rrl

#endif
