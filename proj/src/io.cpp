#include "bifix/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bifix {

std::string format_transformation_set(const Semigroup& s) {
  std::string out = "n=" + std::to_string(s.n()) + "\n";
  for (const auto& t : s.elements()) {
    out += t.to_string();
    out += '\n';
  }
  return out;
}

Semigroup parse_transformation_set(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0) {
    throw std::runtime_error("transformation set must start with an n=<int> line");
  }
  int n = 0;
  try {
    n = std::stoi(line.substr(2));
  } catch (const std::exception&) {
    throw std::runtime_error("bad state count in header line: " + line);
  }
  std::vector<Transformation> elements;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<State> images;
    State v;
    while (row >> v) images.push_back(v);
    if (static_cast<int>(images.size()) != n) {
      throw std::runtime_error("line " + std::to_string(line_no) + " has " +
                               std::to_string(images.size()) + " images, expected " +
                               std::to_string(n));
    }
    elements.emplace_back(std::move(images));
  }
  return Semigroup::from_elements(n, std::move(elements));
}

void write_transformation_set(const std::filesystem::path& path, const Semigroup& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << format_transformation_set(s);
}

Semigroup read_transformation_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_transformation_set(buffer.str());
}

std::string format_dfa_json(const Dfa& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n;
  j["alphabet"] = d.alphabet_size();
  auto& delta = j["delta"] = nlohmann::ordered_json::array();
  for (const auto& row : d.delta) {
    auto& r = delta.emplace_back(nlohmann::ordered_json::array());
    for (State q = 0; q < d.n; ++q) r.push_back(row[q]);
  }
  j["initial"] = d.initial;
  j["finals"] = d.finals;
  return j.dump();
}

Dfa parse_dfa_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  const int alphabet = j.at("alphabet").get<int>();
  std::vector<Transformation> delta;
  for (const auto& row : j.at("delta")) {
    delta.emplace_back(row.get<std::vector<State>>());
  }
  if (static_cast<int>(delta.size()) != alphabet) {
    throw std::runtime_error("delta has " + std::to_string(delta.size()) +
                             " rows, alphabet says " + std::to_string(alphabet));
  }
  return Dfa(n, std::move(delta), j.at("initial").get<State>(),
             j.at("finals").get<std::vector<State>>());
}

void write_dfa_json(const std::filesystem::path& path, const Dfa& d) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << format_dfa_json(d) << "\n";
}

Dfa read_dfa_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_dfa_json(buffer.str());
}

std::string content_hash(const std::string& content) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CacheDir::CacheDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<std::string> CacheDir::load(const std::string& set_name, int n) const {
  const std::string prefix = set_name + "-n" + std::to_string(n) + "-";
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path());
    if (!in) continue;
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();
    const std::string expected = prefix + content_hash(content) + ".txt";
    if (name == expected) return content;
  }
  return std::nullopt;
}

std::filesystem::path CacheDir::store(const std::string& set_name, int n,
                                      const std::string& content) const {
  const auto path = dir_ / (set_name + "-n" + std::to_string(n) + "-" +
                            content_hash(content) + ".txt");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  return path;
}

}  // namespace bifix
