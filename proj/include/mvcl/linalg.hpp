#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvcl/errors.hpp"

namespace mvcl {

// Dense 64-bit row; the joint embedding space works exclusively on these.
using Vec = std::vector<double>;

// Front/right/left embeddings of one subject.
struct MultiviewEmbedding {
  Vec front;
  Vec right;
  Vec left;
};

// Norms below this are treated as zero.
inline constexpr double kNormEps = 1e-12;

bool all_finite(std::span<const double> v);

// Left-to-right accumulation; summation order is part of the contract so
// that parallel and sequential paths reproduce each other bitwise.
double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> v);
double norm(std::span<const double> v);
double squared_distance(std::span<const double> a, std::span<const double> b);

// Cosine similarity clamped to [-1, 1]. Throws InvalidArgument with
// Errc::dimension_mismatch or Errc::zero_norm.
double cosine_sim(std::span<const double> a, std::span<const double> b);

// Unit-length copy of v. Throws on zero norm.
Vec l2_normalized(std::span<const double> v);

// Max-shifted log softmax; exp of the result sums to 1 even for scores
// with magnitudes around 1e3. Throws on empty input.
std::vector<double> log_softmax_row(std::span<const double> scores);

double sigmoid(double x);

// Counter-based 64-bit generator (splitmix64). The raw stream is pure
// integer arithmetic, so equal seeds give equal streams on every platform.
// Single-owner: do not share one instance across concurrent callers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept;

  // Uniform in [0, 1).
  double next_double() noexcept;

  // Standard normal via Box-Muller; consumes exactly two raw draws.
  double next_gaussian() noexcept;

  // Uniform in [0, bound), rejection-sampled so it is exactly unbiased.
  std::uint64_t next_below(std::uint64_t bound);

  // Derives an independent sub-seed for stream `stream` of `seed`.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace mvcl
