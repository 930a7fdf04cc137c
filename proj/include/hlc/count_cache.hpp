#pragma once
// CSV persistence for count series: "# key=value" header lines, then "t,count" rows.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hlc/counting.hpp"

namespace hlc {

class CacheFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_count_csv(std::ostream& out, const CountSeries& cs);
void write_count_csv(const std::filesystem::path& path, const CountSeries& cs);

// Throws CacheFormatError on any header or row inconsistency.
CountSeries read_count_csv(std::istream& in);
CountSeries read_count_csv(const std::filesystem::path& path);

// $HLC_CACHE_DIR if set, else ".hlc-cache".
std::filesystem::path default_cache_dir();

std::filesystem::path cache_file_name(const FormSpec& form, int64_t k, uint64_t T, Provider provider);

struct CachedCount {
  CountSeries series;
  bool from_cache = false;
  std::string warning;  // set when an existing cache file was rejected
};

// Reuses a matching cache file, otherwise computes and writes one.
CachedCount load_or_compute(const std::filesystem::path& dir, const FormSpec& form, int64_t k, uint64_t T,
                            const CountOptions& opt);

}  // namespace hlc
