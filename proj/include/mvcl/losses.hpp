#pragma once

#include <span>
#include <vector>

#include "mvcl/linalg.hpp"
#include "mvcl/pairs.hpp"

namespace mvcl {

enum class PairReduction { mean, sum };
enum class NegSign { corrected, paper_literal };

struct LossConfig {
  double tau = 0.07;
  double weight_contrastive = 1.0;
  double weight_pos = 1.0;
  double weight_neg = 1.0;
  double weight_consistency = 1.0;
  PairReduction pair_reduction = PairReduction::mean;
  // `corrected` penalizes high similarity inside negative pairs;
  // `paper_literal` keeps the printed sign, under which minimization pulls
  // negative pairs together. Kept for ablations.
  NegSign neg_sign = NegSign::corrected;
  double sigmoid_clamp = 1e-7;

  void validate() const;  // throws InvalidArgument
};

struct unchecked_t {
  explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

// Aligned visual/textual embedding lists. The checked constructor enforces
// equal lengths, one shared dimension >= 2, finite entries, and unit norm
// within 1e-9. The unchecked overload keeps only the shape checks; gradient
// probes use it to evaluate losses at perturbed, slightly off-sphere points.
class Batch {
 public:
  Batch(std::vector<Vec> visual, std::vector<Vec> textual);
  Batch(std::vector<Vec> visual, std::vector<Vec> textual, unchecked_t);

  std::size_t size() const { return visual_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& visual() const { return visual_; }
  const std::vector<Vec>& textual() const { return textual_; }

 private:
  void check_shape() const;
  std::vector<Vec> visual_;
  std::vector<Vec> textual_;
  std::size_t dim_ = 0;
};

struct LossReport {
  double total = 0.0;
  double contrastive = 0.0;
  double image_to_text = 0.0;
  double text_to_image = 0.0;
  double consistency = 0.0;
  double positive = 0.0;
  double negative = 0.0;
};

// Temperature-scaled cosine scores; row i holds sim(v_i, t_j)/tau for all j.
std::vector<std::vector<double>> similarity_matrix(const Batch& b, double tau);

double image_to_text_loss(const Batch& b, const LossConfig& cfg);
double text_to_image_loss(const Batch& b, const LossConfig& cfg);

// Exactly the mean of the two directional losses.
double contrastive_loss(const Batch& b, const LossConfig& cfg);

// Mean Euclidean distance between the plain (not renormalized) view average
// and the subject's text embedding.
double multiview_consistency_loss(std::span<const MultiviewEmbedding> views,
                                  std::span<const Vec> texts);

double positive_pair_loss(std::span<const Vec> embs,
                          std::span<const IndexPair> pairs,
                          const LossConfig& cfg);
double negative_pair_loss(std::span<const Vec> embs,
                          std::span<const IndexPair> pairs,
                          const LossConfig& cfg);

// Flattens views subject-major in (front, right, left) order; pair indices
// address this flat list.
std::vector<Vec> flatten_views(std::span<const MultiviewEmbedding> views);

// Training batch: every view becomes one row paired with its subject's text
// embedding, so batch rows share the index space of the flattened views.
Batch make_view_batch(std::span<const MultiviewEmbedding> views,
                      std::span<const Vec> texts);
Batch make_view_batch(std::span<const MultiviewEmbedding> views,
                      std::span<const Vec> texts, unchecked_t);

// Weighted sum of all terms. `b` is the contrastive batch; pair indices in
// `ps` address flatten_views(views).
LossReport total_loss(const Batch& b, std::span<const MultiviewEmbedding> views,
                      std::span<const Vec> texts, const PairSets& ps,
                      const LossConfig& cfg);

}  // namespace mvcl
