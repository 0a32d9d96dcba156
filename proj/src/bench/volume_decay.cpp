#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "spectra/bench.hpp"
#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"

namespace spectra::bench {

VolumeDecay volume_decay(std::size_t m, std::size_t d, const std::vector<std::size_t>& ns, std::uint64_t seed,
                         SketchKind kind) {
  if (ns.empty()) throw DomainError("volume_decay: no column counts");
  const std::size_t n_max = *std::max_element(ns.begin(), ns.end());
  if (n_max > d) throw DomainError("volume_decay: n exceeds d, the sketch cannot have full column rank");

  MatrixSpec spec{SampledIdentitySpec{m, n_max}, seed};
  const Matrix full = generate(spec);
  const std::size_t rows = sketch_input_rows(kind, m);
  const SketchOperator op = SketchOperator::make(kind, d, rows, seed);
  const Matrix sketched = op.apply(pad_rows(full, rows));

  VolumeDecay out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n : ns) {
    if (n == 0) throw DomainError("volume_decay: n must be positive");
    VolumePoint p;
    p.n = n;
    p.log_volume = log_volume(sketched.columns(0, n));
    p.volume = std::exp(p.log_volume);
    out.points.push_back(p);
    xs.push_back(static_cast<double>(n));
    ys.push_back(p.log_volume);
  }
  if (ns.size() >= 2) std::tie(out.slope, out.intercept) = fit_line(xs, ys);
  return out;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

void write_volume_csv(std::ostream& out, const VolumeDecay& decay) {
  out << "n,log_volume,volume\n";
  char buf[96];
  for (const VolumePoint& p : decay.points) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g\n", p.n, p.log_volume, p.volume);
    out << buf;
  }
}

std::string volume_gnuplot_script(const std::string& csv_path) {
  return "set datafile separator ','\n"
         "set key off\n"
         "set xlabel 'n'\n"
         "set ylabel 'log V(Omega M)'\n"
         "plot '" +
         csv_path + "' using 1:2 skip 1 with linespoints\n";
}

}  // namespace spectra::bench
