#pragma once

#include <istream>
#include <string>
#include <vector>

namespace hardylab {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Reads `key = value` lines. Blank lines and lines starting with '#' are
/// skipped; surrounding whitespace is trimmed. Throws DomainError on a line
/// without '=' or with an empty key, and on a repeated key.
std::vector<KeyValue> parse_key_values(std::istream& in, const std::string& source);

double parse_double(const KeyValue& kv);
std::vector<double> parse_double_list(const KeyValue& kv);

}  // namespace hardylab
