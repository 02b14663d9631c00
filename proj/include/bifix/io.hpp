#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "bifix/dfa.hpp"
#include "bifix/semigroup.hpp"

namespace bifix {

/// Line format for transformation sets: first line "n=<int>", then one
/// transformation per line as n space-separated decimal images, rows in
/// insertion order.
std::string format_transformation_set(const Semigroup& s);
Semigroup parse_transformation_set(const std::string& text);

void write_transformation_set(const std::filesystem::path& path, const Semigroup& s);
Semigroup read_transformation_set(const std::filesystem::path& path);

/// DFA JSON: {"n":int,"alphabet":int,"delta":[[int,...],...],"initial":int,
/// "finals":[int,...]} with delta indexed [letter][state].
std::string format_dfa_json(const Dfa& d);
Dfa parse_dfa_json(const std::string& text);

void write_dfa_json(const std::filesystem::path& path, const Dfa& d);
Dfa read_dfa_json(const std::filesystem::path& path);

/// Content-addressed store for enumerated sets, keyed by (set name, n); the
/// payload hash is embedded in the filename and verified on load.
class CacheDir {
 public:
  explicit CacheDir(std::filesystem::path dir);

  std::optional<std::string> load(const std::string& set_name, int n) const;
  std::filesystem::path store(const std::string& set_name, int n,
                              const std::string& content) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

/// FNV-1a, as a 16-digit hex string.
std::string content_hash(const std::string& content);

}  // namespace bifix
