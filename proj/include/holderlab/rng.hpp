#ifndef HOLDERLAB_RNG_HPP
#define HOLDERLAB_RNG_HPP

#include <cstdint>
#include <string_view>

namespace holderlab {

// Inverse of the standard normal CDF (Wichura's AS241 rational
// approximation, the PPND16 variant; relative error below 1e-15 on
// (0, 1)). All Gaussian variates in the library go through this map so
// that results are reproducible bit for bit.
double normal_quantile(double u);

// Splittable counter-based random stream. A stream is identified by a
// 64-bit key; child streams are derived by hashing a (tag, index) label
// into the key. Disjoint label paths give independent-looking streams,
// and draws never mutate shared state, so streams are cheap value types.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed);

  // Deterministic child stream for the label (tag, index).
  [[nodiscard]] RngStream derive(std::string_view tag, std::uint64_t index) const;

  // Uniform draw in the open interval (0, 1).
  double next_uniform();

  // Standard normal draw via normal_quantile(next_uniform()).
  double next_normal();

  [[nodiscard]] std::uint64_t key() const { return key_; }

 private:
  RngStream(std::uint64_t key, int) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace holderlab

#endif
