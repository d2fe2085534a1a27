#include "hardylab/keyvalue.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "hardylab/errors.hpp"

namespace hardylab {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& text, const KeyValue& kv) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw DomainError("line " + std::to_string(kv.line) + ": '" + kv.key +
                      "' expects a number, got '" + t + "'");
  }
  return value;
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& source) {
  std::vector<KeyValue> out;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw DomainError(source + ":" + std::to_string(line) + ": expected 'key = value'");
    }
    KeyValue kv{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (kv.key.empty()) throw DomainError(source + ":" + std::to_string(line) + ": empty key");
    if (!seen.insert(kv.key).second) {
      throw DomainError(source + ":" + std::to_string(line) + ": duplicate key '" + kv.key + "'");
    }
    out.push_back(std::move(kv));
  }
  return out;
}

double parse_double(const KeyValue& kv) { return to_double(kv.value, kv); }

std::vector<double> parse_double_list(const KeyValue& kv) {
  std::vector<double> values;
  std::stringstream ss(kv.value);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(to_double(item, kv));
  return values;
}

}  // namespace hardylab
