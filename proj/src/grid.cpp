#include "holderlab/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace holderlab {

Partition::Partition(std::vector<double> pts) : points(std::move(pts)) {
  if (points.size() < 2) throw std::invalid_argument("Partition: need at least 2 points");
  if (points.front() != 0.0) throw std::invalid_argument("Partition: first point must be 0");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i - 1] < points[i]))
      throw std::invalid_argument("Partition: points must be strictly increasing");
  if (!(points.back() > 0.0)) throw std::invalid_argument("Partition: horizon must be positive");
}

Partition uniform_partition(std::size_t N, double T) {
  if (N < 1) throw std::invalid_argument("uniform_partition: N must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("uniform_partition: T must be positive");
  std::vector<double> pts(N + 1);
  pts[0] = 0.0;
  for (std::size_t n = 1; n < N; ++n)
    pts[n] = static_cast<double>(n) * T / static_cast<double>(N);
  pts[N] = T;  // endpoints exact regardless of rounding in the interior
  return Partition(std::move(pts));
}

MeshStats mesh_stats(const Partition& theta) {
  double dmax = 0.0;
  double dmin = theta.points.back();
  for (std::size_t i = 1; i < theta.points.size(); ++i) {
    const double gap = theta.points[i] - theta.points[i - 1];
    dmax = std::max(dmax, gap);
    dmin = std::min(dmin, gap);
  }
  return {dmax, dmin};
}

bool DistanceBand::contains(double gap) const {
  switch (kind) {
    case BandKind::OpenOpen:
      return gap > c;
    case BandKind::ClosedOpen:
      return gap >= c;
    case BandKind::OpenClosed:
      return gap > 0.0 && gap <= c;
    case BandKind::OpenBelow:
      return gap > 0.0 && gap < c;
    case BandKind::Full:
      return gap > 0.0;
  }
  return false;
}

SampledPath::SampledPath(Partition grid, std::size_t dim, std::vector<double> values)
    : grid_(std::move(grid)), dim_(dim), values_(std::move(values)) {
  if (dim_ < 1) throw std::invalid_argument("SampledPath: dimension must be >= 1");
  if (values_.size() != grid_.size() * dim_)
    throw std::invalid_argument("SampledPath: value count does not match grid");
}

std::vector<double> interpolate_affine(const SampledPath& path, double t) {
  const auto& pts = path.grid().points;
  if (t < pts.front() || t > pts.back())
    throw std::out_of_range("interpolate_affine: time outside [0, T]");
  const auto it = std::lower_bound(pts.begin(), pts.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - pts.begin());
  std::vector<double> out(path.dim());
  if (it != pts.end() && *it == t) {
    const double* v = path.at(j);
    std::copy(v, v + path.dim(), out.begin());
    return out;
  }
  const double t0 = pts[j - 1];
  const double t1 = pts[j];
  const double w1 = (t - t0) / (t1 - t0);
  const double w0 = (t1 - t) / (t1 - t0);
  const double* a = path.at(j - 1);
  const double* b = path.at(j);
  for (std::size_t k = 0; k < path.dim(); ++k) out[k] = w0 * a[k] + w1 * b[k];
  return out;
}

SampledPath refine(const SampledPath& path, std::size_t oversample) {
  if (oversample < 1) throw std::invalid_argument("refine: oversample must be >= 1");
  if (oversample == 1) return path;
  const auto& pts = path.grid().points;
  const std::size_t d = path.dim();
  const std::size_t segs = pts.size() - 1;
  std::vector<double> new_pts;
  std::vector<double> new_vals;
  new_pts.reserve(segs * oversample + 1);
  new_vals.reserve((segs * oversample + 1) * d);
  for (std::size_t j = 0; j < segs; ++j) {
    const double t0 = pts[j];
    const double t1 = pts[j + 1];
    const double* a = path.at(j);
    const double* b = path.at(j + 1);
    new_pts.push_back(t0);
    new_vals.insert(new_vals.end(), a, a + d);
    for (std::size_t i = 1; i < oversample; ++i) {
      const double w1 = static_cast<double>(i) / static_cast<double>(oversample);
      const double w0 = 1.0 - w1;
      new_pts.push_back(w0 * t0 + w1 * t1);
      for (std::size_t k = 0; k < d; ++k) new_vals.push_back(w0 * a[k] + w1 * b[k]);
    }
  }
  new_pts.push_back(pts.back());
  const double* last = path.at(pts.size() - 1);
  new_vals.insert(new_vals.end(), last, last + d);
  return SampledPath(Partition(std::move(new_pts)), d, std::move(new_vals));
}

SampledPath restrict_to(const SampledPath& path, const Partition& coarse) {
  const auto& fine = path.grid().points;
  const std::size_t d = path.dim();
  std::vector<double> vals;
  vals.reserve(coarse.size() * d);
  for (const double t : coarse.points) {
    const auto it = std::lower_bound(fine.begin(), fine.end(), t);
    if (it == fine.end() || *it != t)
      throw std::invalid_argument("restrict_to: coarse point not on the fine grid");
    const double* v = path.at(static_cast<std::size_t>(it - fine.begin()));
    vals.insert(vals.end(), v, v + d);
  }
  return SampledPath(coarse, d, std::move(vals));
}

namespace {

double euclid(const double* v, std::size_t d) {
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) s += v[k] * v[k];
  return std::sqrt(s);
}

double euclid_diff(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double dv = a[k] - b[k];
    s += dv * dv;
  }
  return std::sqrt(s);
}

}  // namespace

double sup_norm(const SampledPath& path) {
  double m = 0.0;
  for (std::size_t i = 0; i < path.num_points(); ++i)
    m = std::max(m, euclid(path.at(i), path.dim()));
  return m;
}

double holder_seminorm(const SampledPath& path, double r, const DistanceBand& band,
                       std::size_t oversample) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("holder_seminorm: exponent must be in [0, 1]");
  const SampledPath fine = refine(path, oversample);
  const auto& pts = fine.grid().points;
  const std::size_t n = pts.size();
  const std::size_t d = fine.dim();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = pts[j] - pts[i];
      if (!band.contains(gap)) continue;
      const double diff = euclid_diff(fine.at(i), fine.at(j), d);
      m = std::max(m, diff / std::pow(gap, r));
    }
  }
  return m;
}

double holder_norm(const SampledPath& path, double r, std::size_t oversample) {
  const SampledPath fine = refine(path, oversample);
  return sup_norm(fine) + holder_seminorm(fine, r, DistanceBand::full(), 1);
}

SampledPath path_difference(const SampledPath& f, const SampledPath& g) {
  if (f.dim() != g.dim() || f.grid().points != g.grid().points)
    throw std::invalid_argument("path_difference: grid or dimension mismatch");
  std::vector<double> vals(f.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f.values()[i] - g.values()[i];
  return SampledPath(f.grid(), f.dim(), std::move(vals));
}

SampledPath path_scale(const SampledPath& f, double lambda) {
  std::vector<double> vals(f.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = lambda * f.values()[i];
  return SampledPath(f.grid(), f.dim(), std::move(vals));
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_path_csv(const SampledPath& path, std::ostream& os) {
  os << 't';
  for (std::size_t k = 0; k < path.dim(); ++k) os << ",x" << k;
  os << '\n';
  for (std::size_t i = 0; i < path.num_points(); ++i) {
    os << format_double(path.grid().points[i]);
    const double* v = path.at(i);
    for (std::size_t k = 0; k < path.dim(); ++k) os << ',' << format_double(v[k]);
    os << '\n';
  }
}

SampledPath read_path_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_path_csv: empty input");
  std::size_t d = 0;
  for (const char c : line)
    if (c == ',') ++d;
  if (d < 1 || line.rfind("t,", 0) != 0)
    throw std::invalid_argument("read_path_csv: malformed header");
  std::vector<double> pts;
  std::vector<double> vals;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(row, cell, ',')) {
      double x = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw std::invalid_argument("read_path_csv: malformed number: " + cell);
      if (col == 0)
        pts.push_back(x);
      else
        vals.push_back(x);
      ++col;
    }
    if (col != d + 1) throw std::invalid_argument("read_path_csv: ragged row");
  }
  return SampledPath(Partition(std::move(pts)), d, std::move(vals));
}

}  // namespace holderlab
