#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "szeta/error.hpp"
#include "szeta/orbits.hpp"

namespace szeta {

namespace {

constexpr std::string_view kMagic = "szeta-orbit-cache";

double parse_double(const std::string& token, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') {
    throw Error(ErrorCode::CacheError,
                fmt::format("{}: malformed number '{}'", path.string(), token));
  }
  return v;
}

}  // namespace

// Layout:
//   szeta-orbit-cache <version>
//   fingerprint <hex> alphabet <L> max_length <M>
//   n multiplicity primitive_period u m x_fix representative   (one per class)
//   end
void save_orbit_table(const OrbitTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::CacheError, fmt::format("cannot write cache {}", path.string()));
  }
  out << fmt::format("{} {}\n", kMagic, kOrbitCacheVersion);
  out << fmt::format("fingerprint {:016x} alphabet {} max_length {}\n", table.fingerprint,
                     table.alphabet, table.max_length);
  for (std::size_t n = 1; n < table.by_length.size(); ++n) {
    const auto& row = table.by_length[n];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& o = row[i];
      out << fmt::format("{} {} {} {:a} {:a} {:a} {}\n", o.n, o.multiplicity, o.primitive_period,
                         o.u, o.m, o.x_fix, to_string(table.representatives[n][i]));
    }
  }
  out << "end\n";
  if (!out) {
    throw Error(ErrorCode::CacheError, fmt::format("failed writing cache {}", path.string()));
  }
}

static OrbitTable load_orbit_table_unchecked(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::CacheError, fmt::format("cannot read cache {}", path.string()));

  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != kMagic || version != kOrbitCacheVersion) {
    throw Error(ErrorCode::CacheError,
                fmt::format("{}: not a version-{} orbit cache", path.string(), kOrbitCacheVersion));
  }
  std::string key_fp, key_alpha, key_max, fp_hex;
  OrbitTable table;
  in >> key_fp >> fp_hex >> key_alpha >> table.alphabet >> key_max >> table.max_length;
  if (!in || key_fp != "fingerprint" || key_alpha != "alphabet" || key_max != "max_length" ||
      table.max_length < 1 || table.max_length > kMaxTruncation) {
    throw Error(ErrorCode::CacheError, fmt::format("{}: malformed header", path.string()));
  }
  table.fingerprint = std::stoull(fp_hex, nullptr, 16);
  table.by_length.resize(static_cast<std::size_t>(table.max_length) + 1);
  table.representatives.resize(static_cast<std::size_t>(table.max_length) + 1);

  std::string token;
  while (in >> token) {
    if (token == "end") return table;
    OrbitScalars o;
    std::string u, m, x, rep;
    o.n = std::stoi(token);
    in >> o.multiplicity >> o.primitive_period >> u >> m >> x >> rep;
    if (!in || o.n < 1 || o.n > table.max_length) {
      throw Error(ErrorCode::CacheError, fmt::format("{}: malformed record", path.string()));
    }
    o.u = parse_double(u, path);
    o.m = parse_double(m, path);
    o.x_fix = parse_double(x, path);
    table.by_length[static_cast<std::size_t>(o.n)].push_back(o);
    table.representatives[static_cast<std::size_t>(o.n)].push_back(parse_word(rep));
  }
  throw Error(ErrorCode::CacheError, fmt::format("{}: truncated cache", path.string()));
}

OrbitTable load_orbit_table(const std::filesystem::path& path) {
  try {
    return load_orbit_table_unchecked(path);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CacheError) throw;
    throw Error(ErrorCode::CacheError, fmt::format("{}: {}", path.string(), e.what()));
  } catch (const std::logic_error&) {
    // std::stoi / std::stoull on a corrupt token
    throw Error(ErrorCode::CacheError, fmt::format("{}: malformed number", path.string()));
  }
}

OrbitTable cached_orbit_table(const GroupConfig& config, int max_length,
                              const std::filesystem::path& path, int threads,
                              const PowerOptions& options) {
  if (std::filesystem::exists(path)) {
    try {
      OrbitTable table = load_orbit_table(path);
      if (table.fingerprint == fingerprint(config) && table.max_length == max_length &&
          table.alphabet == static_cast<int>(config.size())) {
        return table;
      }
    } catch (const Error&) {
      // Stale or corrupt; rebuilt below.
    }
  }
  OrbitTable table = build_orbit_table(config, max_length, threads, options);
  save_orbit_table(table, path);
  return table;
}

}  // namespace szeta
