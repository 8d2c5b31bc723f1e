#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wgqed/errors.hpp"
#include "wgqed/harness.hpp"

namespace wgqed::harness {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_csv(const CsvTable& t) {
  std::ostringstream out;
  out << "# " << t.title << '\n';
  for (const auto& [k, v] : t.provenance) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) throw NumericError("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string format_report(const ComparisonReport& r) {
  std::ostringstream out;
  out << "# comparison report\n";
  out << "id=" << r.id << '\n';
  out << "target=" << r.target << '\n';
  out << "metric=" << r.metric << '\n';
  out << "value=" << format_number(r.value) << '\n';
  out << "tolerance=" << format_number(r.tolerance) << '\n';
  out << "result=" << (r.passed ? "pass" : "fail") << '\n';
  for (const auto& [k, v] : r.provenance) out << "provenance." << k << '=' << v << '\n';
  out << "x,quantity,analytic,simulated,abs_dev,rel_dev\n";
  for (const auto& p : r.points)
    out << format_number(p.x) << ',' << p.quantity << ',' << format_number(p.analytic) << ','
        << format_number(p.simulated) << ',' << format_number(p.abs_dev) << ',' << format_number(p.rel_dev) << '\n';
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw NumericError("cannot write " + tmp.string());
    out << content;
    if (!out) throw NumericError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace wgqed::harness
