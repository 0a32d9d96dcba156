#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "spectra/bench.hpp"
#include "spectra/errors.hpp"

namespace spectra::bench {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void write_csv_header(std::ostream& out) { out << "experiment,algo,seed,k,series,i_or_j,ratio,bound\n"; }

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  write_csv_header(out);
  for (const RunRecord& r : records) {
    const std::string prefix = r.experiment + "," + to_string(r.algo) + "," + std::to_string(r.seed) + "," +
                               std::to_string(r.k) + ",";
    const std::string bound = number(r.ratios.bound);
    for (std::size_t i = 0; i < r.ratios.leading_ratios.size(); ++i)
      out << prefix << "leading," << i + 1 << ',' << number(r.ratios.leading_ratios[i]) << ',' << bound << '\n';
    for (std::size_t j = 0; j < r.ratios.trailing_ratios.size(); ++j) {
      const auto& v = r.ratios.trailing_ratios[j];
      out << prefix << "trailing," << j + 1 << ',' << (v ? number(*v) : "NA") << ',' << bound << '\n';
    }
  }
}

std::string records_to_json(const std::vector<RunRecord>& records, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RunRecord& r : records) {
    nlohmann::json trailing = nlohmann::json::array();
    for (const auto& v : r.ratios.trailing_ratios) trailing.push_back(optional_number(v));
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["matrix"] = r.matrix;
    j["algo"] = to_string(r.algo);
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["kind"] = r.kind ? nlohmann::json(to_string(*r.kind)) : nlohmann::json(nullptr);
    j["d"] = r.d;
    j["f"] = r.f;
    j["f_tilde"] = std::isfinite(r.f_tilde) ? nlohmann::json(r.f_tilde) : nlohmann::json(nullptr);
    j["epsilon_measured"] = optional_number(r.epsilon_measured);
    j["epsilon_nominal"] = optional_number(r.epsilon_nominal);
    j["ratios"] = {{"leading", r.ratios.leading_ratios}, {"trailing", trailing}, {"a_max", r.ratios.a_max}};
    j["bound"] = std::isfinite(r.ratios.bound) ? nlohmann::json(r.ratios.bound) : nlohmann::json(nullptr);
    j["l_values"] = r.qlp.l_values;
    j["r_values"] = r.qlp.r_values;
    j["swap_count"] = r.swap_count;
    j["columns"] = r.columns;
    j["timings_ms"] = {{"sketch", r.sketch_ms}, {"select", r.select_ms}, {"qr", r.qr_ms}, {"total", r.total_ms}};
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

std::vector<std::size_t> parse_range(std::string_view text) {
  auto to_count = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw DomainError("bad range '" + std::string(text) + "'");
    return v;
  };
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(':', start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  if (parts.size() == 1) return {to_count(parts[0])};
  if (parts.size() != 3) throw DomainError("range must be lo:hi:step, got '" + std::string(text) + "'");
  const std::size_t lo = to_count(parts[0]);
  const std::size_t hi = to_count(parts[1]);
  const std::size_t step = to_count(parts[2]);
  if (step == 0 || hi < lo) throw DomainError("empty range '" + std::string(text) + "'");
  std::vector<std::size_t> out;
  for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

}  // namespace spectra::bench
