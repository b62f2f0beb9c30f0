#include "mvcl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mvcl {

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument(Errc::dimension_mismatch,
                          "dot: operands have different dimensions");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

double norm(std::span<const double> v) { return std::sqrt(squared_norm(v)); }

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument(Errc::dimension_mismatch,
                          "squared_distance: operands have different dimensions");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double cosine_sim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument(Errc::dimension_mismatch,
                          "cosine_sim: operands have different dimensions");
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (na <= kNormEps || nb <= kNormEps) {
    throw InvalidArgument(Errc::zero_norm, "cosine_sim: zero-norm input");
  }
  const double c = dot(a, b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

Vec l2_normalized(std::span<const double> v) {
  const double n = norm(v);
  if (n <= kNormEps) {
    throw InvalidArgument(Errc::zero_norm, "l2_normalized: zero-norm input");
  }
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
  return out;
}

std::vector<double> log_softmax_row(std::span<const double> scores) {
  if (scores.empty()) {
    throw InvalidArgument(Errc::empty_input, "log_softmax_row: empty input");
  }
  const double m = *std::max_element(scores.begin(), scores.end());
  double denom = 0.0;
  for (double s : scores) denom += std::exp(s - m);
  const double log_denom = std::log(denom);
  std::vector<double> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = (scores[i] - m) - log_denom;
  }
  return out;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t scramble(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() noexcept { return scramble(state_ += kGamma); }

double Rng::next_double() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() noexcept {
  // u1 lies in (0, 1] so the log is always finite.
  const double u1 =
      static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw InvalidArgument(Errc::invalid_value, "next_below: bound must be > 0");
  }
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t stream) noexcept {
  return scramble(seed + kGamma * (stream + 1));
}

}  // namespace mvcl
