#include "hlc/count_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hlc {

namespace {

std::string header_value(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) throw CacheFormatError("missing header line '# " + key + "='");
  const std::string prefix = "# " + key + "=";
  if (line.rfind(prefix, 0) != 0) throw CacheFormatError("expected '" + prefix + "', found '" + line + "'");
  return line.substr(prefix.size());
}

uint64_t parse_u64(const std::string& s, const char* what) {
  try {
    const u128 v = parse_u128(s);
    if (v > UINT64_MAX) throw std::invalid_argument("too large");
    return static_cast<uint64_t>(v);
  } catch (const std::invalid_argument&) {
    throw CacheFormatError(std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

void write_count_csv(std::ostream& out, const CountSeries& cs) {
  out << "# form=" << serialize_form(cs.form) << "\n";
  out << "# k=" << cs.k << "\n";
  out << "# provider=" << provider_name(cs.provider) << "\n";
  out << "# T=" << cs.T << "\n";
  for (uint64_t t = 1; t <= cs.T; ++t) out << t << "," << to_string(cs.values[t]) << "\n";
}

void write_count_csv(const std::filesystem::path& path, const CountSeries& cs) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_count_csv(out, cs);
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CountSeries read_count_csv(std::istream& in) {
  CountSeries cs;
  try {
    cs.form = parse_form(header_value(in, "form"));
    const std::string ktext = header_value(in, "k");
    cs.k = static_cast<int64_t>(parse_u64(ktext, "k"));
    cs.provider = parse_provider(header_value(in, "provider"));
  } catch (const std::invalid_argument& e) {
    throw CacheFormatError(e.what());
  }
  cs.T = parse_u64(header_value(in, "T"), "T");
  if (cs.k < 1 || cs.T < 1) throw CacheFormatError("k and T must be positive");
  cs.values.assign(cs.T + 1, 0);
  std::string line;
  for (uint64_t t = 1; t <= cs.T; ++t) {
    if (!std::getline(in, line)) throw CacheFormatError("truncated: expected row for t=" + std::to_string(t));
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw CacheFormatError("malformed row '" + line + "'");
    if (parse_u64(line.substr(0, comma), "t") != t) throw CacheFormatError("row out of order: '" + line + "'");
    try {
      cs.values[t] = parse_u128(line.substr(comma + 1));
    } catch (const std::invalid_argument&) {
      throw CacheFormatError("bad count in row '" + line + "'");
    }
    if (cs.values[t] < cs.values[t - 1]) throw CacheFormatError("counts decrease at t=" + std::to_string(t));
  }
  if (std::getline(in, line) && !line.empty()) throw CacheFormatError("trailing data after t=T");
  return cs;
}

CountSeries read_count_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CacheFormatError("cannot open " + path.string());
  return read_count_csv(in);
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("HLC_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".hlc-cache";
}

std::filesystem::path cache_file_name(const FormSpec& form, int64_t k, uint64_t T, Provider provider) {
  std::string f = serialize_form(form);
  for (char& c : f) {
    if (c == ',') c = '-';
    if (c == ';' || c == '@' || c == ':') c = '_';
  }
  return "count_" + f + "_k" + std::to_string(k) + "_T" + std::to_string(T) + "_" + provider_name(provider) + ".csv";
}

CachedCount load_or_compute(const std::filesystem::path& dir, const FormSpec& form, int64_t k, uint64_t T,
                            const CountOptions& opt) {
  CachedCount out;
  const std::filesystem::path path = dir / cache_file_name(form, k, T, opt.provider);
  if (std::filesystem::exists(path)) {
    try {
      CountSeries cs = read_count_csv(path);
      if (cs.form == form && cs.k == k && cs.T == T && cs.provider == opt.provider) {
        out.series = std::move(cs);
        out.from_cache = true;
        return out;
      }
      out.warning = "cache file " + path.string() + " does not match the request; recomputing";
    } catch (const CacheFormatError& e) {
      out.warning = "corrupted cache file " + path.string() + " (" + e.what() + "); recomputing";
    }
  }
  out.series = count_series(form, k, T, opt);
  write_count_csv(path, out.series);
  return out;
}

}  // namespace hlc
