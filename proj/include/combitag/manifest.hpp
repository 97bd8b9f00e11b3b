#ifndef COMBITAG_MANIFEST_HPP
#define COMBITAG_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>

namespace combitag {

// Every output file gets a sibling "<file>.manifest" recording the
// subcommand, all parameters, the global seed and the digests of every input
// file. Equal manifests imply byte-identical outputs; nothing time- or
// host-dependent is recorded.
class Manifest {
public:
  explicit Manifest(std::string subcommand);

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, double value);
  void add_input(const std::string& path);

  std::string text() const;
  void write_for(const std::string& output_path) const;

private:
  std::string subcommand_;
  std::map<std::string, std::string> entries_;
};

} // namespace combitag

#endif
