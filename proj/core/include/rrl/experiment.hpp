#ifndef RRL_EXPERIMENT_HPP
#define RRL_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rrl/generator.hpp"
#include "rrl/io.hpp"
#include "rrl/report.hpp"

namespace rrl {

// Line-oriented "[section]" / "key = value" config.  '#' and ';' start
// comments; keys within a section keep file order.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }
  std::string require(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<std::string> tokens(const std::string& key) const;  // whitespace split
};

struct Config {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(const std::string& name) const;
  const ConfigSection& require(const std::string& name) const;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// [generate] section -> spec; pattern files resolve against base_dir.
GeneratorSpec generator_from_config(const ConfigSection& s, std::uint64_t default_seed,
                                    const std::string& base_dir);

// [family] section: either `predicate = name` or `file = path.fam`.
FamilyFile family_from_config(const ConfigSection& s, const std::string& base_dir);

// Runs the experiment described by [experiment] kind = tester | editor |
// pipeline | count.  Identical config (including seed) renders an identical
// report.
Report run_experiment(const Config& cfg, const std::string& base_dir = "");
Report run_experiment_file(const std::string& path);

}  // namespace rrl

#endif
