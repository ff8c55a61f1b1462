// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "devo/error.h"
#include "devo/mix.h"

namespace devo {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::string> split_tabs(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = s.find('\t', start);
    out.push_back(s.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

std::uint64_t line_seed(std::uint64_t global_seed, std::uint64_t line_index) {
  return splitmix64(splitmix64(global_seed) ^ line_index);
}

ManifestEntry parse_manifest_line(const std::string& text, std::size_t line) {
  std::string s = text;
  if (!s.empty() && s.back() == '\r') s.pop_back();
  const auto fields = split_tabs(s);
  const std::string where = "line " + std::to_string(line) + ": ";
  if (fields.size() != 4) {
    throw Error(ErrorCode::kManifestSyntax,
                where + "expected 4 tab-separated fields, got " + std::to_string(fields.size()));
  }
  for (const auto& f : fields) {
    if (f.empty()) throw Error(ErrorCode::kManifestSyntax, where + "empty field");
  }
  ManifestEntry e{line, fields[0], fields[1], std::nullopt, fields[3]};
  if (fields[2] != "rand") {
    char* end = nullptr;
    const double v = std::strtod(fields[2].c_str(), &end);
    if (end != fields[2].c_str() + fields[2].size() || !std::isfinite(v)) {
      throw Error(ErrorCode::kManifestSyntax,
                  where + "snr must be a finite number or 'rand', got '" + fields[2] + "'");
    }
    e.snr_db = v;
  }
  return e;
}

MixSummary run_manifest(const std::filesystem::path& manifest, std::uint64_t seed) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::kFileNotFound, manifest.string());
  const std::filesystem::path base = manifest.parent_path();

  MixSummary summary;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text == "\r" || text[0] == '#') continue;
    try {
      const ManifestEntry e = parse_manifest_line(text, line);
      const std::filesystem::path stem = resolve(base, e.stem);
      if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
      MixSpec spec;
      spec.speech_path = resolve(base, e.speech);
      spec.noise_path = resolve(base, e.noise);
      spec.snr_db = e.snr_db;
      spec.seed = line_seed(seed, line);
      spec.mixture_out = stem.string() + ".mix.wav";
      spec.clean_out = stem.string() + ".clean.wav";
      spec.noise_out = stem.string() + ".noise.wav";
      make_mixture(spec);
      ++summary.successes;
    } catch (const std::exception& ex) {
      summary.failures.push_back({line, ex.what()});
    }
  }
  return summary;
}

}  // namespace devo
