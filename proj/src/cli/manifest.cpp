#include <cstdio>
#include <sstream>

#include "hardylab/cli.hpp"

namespace hardylab::cli {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string RunManifest::render(const std::string& prefix) const {
  std::ostringstream os;
  os << prefix << "tool = " << kToolName << ' ' << kToolVersion << '\n';
  os << prefix << "subcommand = " << subcommand << '\n';
  for (const auto& [key, value] : parameters) os << prefix << "param." << key << " = " << value << '\n';
  if (seed) os << prefix << "seed = " << *seed << '\n';
  for (const auto& path : outputs) os << prefix << "output = " << path << '\n';
  return os.str();
}

}  // namespace hardylab::cli
