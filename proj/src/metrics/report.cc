// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstdio>
#include <sstream>

#include "devo/metrics.h"

namespace devo {
namespace {

std::string format_cell(const std::optional<double>& v) {
  if (!v) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", *v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::optional<double>> MetricReport::means() const {
  std::vector<std::optional<double>> out(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    double total = 0.0;
    std::size_t n = 0;
    for (const Row& r : rows) {
      if (c < r.values.size() && r.values[c]) {
        total += *r.values[c];
        ++n;
      }
    }
    if (n > 0) out[c] = total / static_cast<double>(n);
  }
  return out;
}

std::string MetricReport::to_csv() const {
  std::ostringstream os;
  os << "id";
  for (const auto& c : columns) os << ',' << quote(c);
  os << '\n';
  const auto write_row = [&](const std::string& id, const auto& values) {
    os << quote(id);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << ',' << (c < values.size() ? format_cell(values[c]) : std::string());
    }
    os << '\n';
  };
  for (const Row& r : rows) write_row(r.id, r.values);
  write_row("mean", means());
  return os.str();
}

MetricReport evaluate(const std::vector<LabeledTriple>& items,
                      const std::vector<Metric>& metrics,
                      const std::vector<std::string>& external_columns) {
  MetricReport report;
  for (Metric m : metrics) report.columns.emplace_back(to_string(m));
  for (Metric m : metrics) {
    if (has_delta(m)) report.columns.push_back(std::string("delta_") + to_string(m));
  }
  for (const auto& c : external_columns) report.columns.push_back(c);

  for (const auto& item : items) {
    MetricReport::Row row{item.id, {}};
    for (Metric m : metrics) row.values.push_back(metric_value(m, item.triple));
    for (Metric m : metrics) {
      if (has_delta(m)) row.values.push_back(delta_metric(m, item.triple));
    }
    row.values.resize(report.columns.size());
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace devo
