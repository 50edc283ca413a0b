#ifndef HOLDERLAB_GRID_HPP
#define HOLDERLAB_GRID_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace holderlab {

// A finite time grid {0 = t_0 < t_1 < ... < t_n = T}.
struct Partition {
  std::vector<double> points;

  Partition() = default;
  explicit Partition(std::vector<double> pts);

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] double horizon() const { return points.back(); }
};

struct MeshStats {
  double d_max;
  double d_min;
};

Partition uniform_partition(std::size_t N, double T);

MeshStats mesh_stats(const Partition& theta);

// Gap band A for restricted Hölder seminorms: which values of |t - s| count.
enum class BandKind { OpenOpen, ClosedOpen, OpenClosed, OpenBelow, Full };

struct DistanceBand {
  BandKind kind = BandKind::Full;
  double c = 0.0;  // threshold, unused for Full

  static DistanceBand full() { return {BandKind::Full, 0.0}; }
  static DistanceBand above_open(double c) { return {BandKind::OpenOpen, c}; }
  static DistanceBand above_closed(double c) { return {BandKind::ClosedOpen, c}; }
  static DistanceBand below_closed(double c) { return {BandKind::OpenClosed, c}; }
  static DistanceBand below_open(double c) { return {BandKind::OpenBelow, c}; }

  [[nodiscard]] bool contains(double gap) const;
};

// Values of a path on a Partition in R^d, stored row-major (point-major).
// The piecewise-affine extension between grid points is implied; all
// norm operations act on it via refinement.
class SampledPath {
 public:
  SampledPath() = default;
  SampledPath(Partition grid, std::size_t dim, std::vector<double> values);

  [[nodiscard]] const Partition& grid() const { return grid_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t num_points() const { return grid_.size(); }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::vector<double>& values() { return values_; }

  [[nodiscard]] const double* at(std::size_t i) const { return values_.data() + i * dim_; }
  [[nodiscard]] double* at(std::size_t i) { return values_.data() + i * dim_; }

 private:
  Partition grid_;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// [f]_theta(t): bit-exact stored value at grid points, affine in between.
std::vector<double> interpolate_affine(const SampledPath& path, double t);

// Inserts oversample - 1 equispaced points inside every segment; values on
// the new points follow the affine extension. refine(p, 1) == p.
SampledPath refine(const SampledPath& path, std::size_t oversample);

// Copies values bit-exactly at the points of `coarse`, which must all be
// present in path.grid exactly.
SampledPath restrict_to(const SampledPath& path, const Partition& coarse);

double sup_norm(const SampledPath& path);

// max over pairs of refine(path, oversample) with gap in `band` of
// |f(t) - f(s)| / |t - s|^r; 0 when no pair qualifies.
double holder_seminorm(const SampledPath& path, double r, const DistanceBand& band,
                       std::size_t oversample);

// sup norm + Full-band seminorm, both on the same refined grid.
double holder_norm(const SampledPath& path, double r, std::size_t oversample);

// Pointwise combinations; grids must match exactly.
SampledPath path_difference(const SampledPath& f, const SampledPath& g);
SampledPath path_scale(const SampledPath& f, double lambda);

// CSV with header t,x0,...,x{d-1}, shortest round-trip doubles.
void write_path_csv(const SampledPath& path, std::ostream& os);
SampledPath read_path_csv(std::istream& is);

// Shortest round-trip decimal formatting for doubles; used by every
// artifact writer so outputs are byte-stable.
std::string format_double(double x);

}  // namespace holderlab

#endif
