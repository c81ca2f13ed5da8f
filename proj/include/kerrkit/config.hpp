#pragma once

// Plain-text run configuration:
//
//   # comment
//   seed = 7                 top-level keys apply to every command
//   [verify]                 keys below apply to `verify` only
//   a_over_m = 0, 0.3
//
// Values are scalars or comma-separated lists. Each command declares the
// keys it understands; a key no command understands is rejected.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kerrkit {

class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  // Keys visible to `command`: top-level entries overridden by its section.
  // Throws ConfigError naming the first key outside `allowed`; other
  // sections are ignored.
  class View {
   public:
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;

   private:
    friend class Config;
    std::map<std::string, std::string> values_;
  };

  View view(const std::string& command, const std::set<std::string>& allowed) const;

  // Keys each command understands. Validates the whole file: sections must
  // name a command, section keys must belong to it, and top-level keys to
  // at least one command. The view keeps only the keys of `command`.
  using Schema = std::map<std::string, std::set<std::string>>;
  View view(const std::string& command, const Schema& schema) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace kerrkit
