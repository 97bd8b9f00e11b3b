#ifndef COMBITAG_UTIL_HPP
#define COMBITAG_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace combitag {

constexpr const char* kArtifactVersion = "0.1.0";

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  std::size_t line_number;
};

struct AlignError : std::runtime_error {
  explicit AlignError(const std::string& msg) : std::runtime_error(msg) {}
};

std::vector<std::string> split_fields(const std::string& line, char sep);

// FNV-1a over raw bytes; used for input digests in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string file_digest_hex(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Inverse standard normal CDF (Acklam's rational approximation).
double inv_normal_cdf(double p);

// Survival function of the chi-square distribution with 1 degree of freedom.
double chi_square_1df_sf(double x);

std::string format_double(double v, int precision);

} // namespace combitag

#endif
