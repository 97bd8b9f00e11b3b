#include "combitag/manifest.hpp"

#include "combitag/util.hpp"

#include <cstdio>
#include <sstream>

namespace combitag {

Manifest::Manifest(std::string subcommand) : subcommand_(std::move(subcommand)) {}

void Manifest::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void Manifest::set(const std::string& key, std::uint64_t value) {
  entries_[key] = std::to_string(value);
}

void Manifest::set(const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  entries_[key] = buf;
}

void Manifest::add_input(const std::string& path) {
  entries_["input." + path] = file_digest_hex(path);
}

std::string Manifest::text() const {
  std::ostringstream out;
  out << "artifact\t" << kArtifactVersion << '\n';
  out << "subcommand\t" << subcommand_ << '\n';
  for (const auto& [key, value] : entries_) {
    out << key << '\t' << value << '\n';
  }
  return out.str();
}

void Manifest::write_for(const std::string& output_path) const {
  write_file(output_path + ".manifest", text());
}

} // namespace combitag
