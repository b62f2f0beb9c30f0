#include "mvcl/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mvcl {

void LossConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument(Errc::invalid_value, "loss.tau must be > 0");
  }
  for (double w : {weight_contrastive, weight_pos, weight_neg,
                   weight_consistency}) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw InvalidArgument(Errc::invalid_value,
                            "loss weights must be non-negative");
    }
  }
  if (!(sigmoid_clamp > 0.0) || !(sigmoid_clamp < 0.5)) {
    throw InvalidArgument(Errc::invalid_value,
                          "loss.sigmoid_clamp must lie in (0, 0.5)");
  }
}

Batch::Batch(std::vector<Vec> visual, std::vector<Vec> textual)
    : visual_(std::move(visual)), textual_(std::move(textual)) {
  check_shape();
  for (const auto* side : {&visual_, &textual_}) {
    for (const Vec& v : *side) {
      if (!all_finite(v)) {
        throw InvalidArgument(Errc::non_finite,
                              "Batch: embeddings must be finite");
      }
      if (std::abs(norm(v) - 1.0) > 1e-9) {
        throw InvalidArgument(Errc::invalid_value,
                              "Batch: embeddings must be unit-norm");
      }
    }
  }
}

Batch::Batch(std::vector<Vec> visual, std::vector<Vec> textual, unchecked_t)
    : visual_(std::move(visual)), textual_(std::move(textual)) {
  check_shape();
}

void Batch::check_shape() {
  if (visual_.empty() || visual_.size() != textual_.size()) {
    throw InvalidArgument(Errc::dimension_mismatch,
                          "Batch: need equal, non-empty embedding lists");
  }
  const std::size_t d = visual_.front().size();
  if (d < 2) {
    throw InvalidArgument(Errc::invalid_value, "Batch: dim must be >= 2");
  }
  for (const auto* side : {&visual_, &textual_}) {
    for (const Vec& v : *side) {
      if (v.size() != d) {
        throw InvalidArgument(Errc::dimension_mismatch,
                              "Batch: embeddings must share one dimension");
      }
    }
  }
  dim_ = d;
}

std::vector<std::vector<double>> similarity_matrix(const Batch& b,
                                                   double tau) {
  const std::size_t n = b.size();
  std::vector<std::vector<double>> s(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s[i][j] = cosine_sim(b.visual()[i], b.textual()[j]) / tau;
    }
  }
  return s;
}

double image_to_text_loss(const Batch& b, const LossConfig& cfg) {
  cfg.validate();
  const auto s = similarity_matrix(b, cfg.tau);
  const std::size_t n = b.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += log_softmax_row(s[i])[i];
  }
  return -acc / static_cast<double>(n);
}

double text_to_image_loss(const Batch& b, const LossConfig& cfg) {
  cfg.validate();
  const auto s = similarity_matrix(b, cfg.tau);
  const std::size_t n = b.size();
  std::vector<double> column(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) column[j] = s[j][i];
    acc += log_softmax_row(column)[i];
  }
  return -acc / static_cast<double>(n);
}

double contrastive_loss(const Batch& b, const LossConfig& cfg) {
  return (image_to_text_loss(b, cfg) + text_to_image_loss(b, cfg)) / 2.0;
}

double multiview_consistency_loss(std::span<const MultiviewEmbedding> views,
                                  std::span<const Vec> texts) {
  if (views.empty() || views.size() != texts.size()) {
    throw InvalidArgument(Errc::dimension_mismatch,
                          "consistency: need equal, non-empty lists");
  }
  const std::size_t d = texts.front().size();
  double acc = 0.0;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& mv = views[i];
    if (mv.front.size() != d || mv.right.size() != d || mv.left.size() != d ||
        texts[i].size() != d) {
      throw InvalidArgument(Errc::dimension_mismatch,
                            "consistency: dimension mismatch");
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double m = (mv.front[k] + mv.right[k] + mv.left[k]) / 3.0;
      const double r = m - texts[i][k];
      sq += r * r;
    }
    acc += std::sqrt(sq);
  }
  return acc / static_cast<double>(views.size());
}

namespace {

double clamped_sigmoid(double x, double clamp) {
  return std::clamp(sigmoid(x), clamp, 1.0 - clamp);
}

void check_pairs(std::span<const Vec> embs, std::span<const IndexPair> pairs,
                 const char* what) {
  if (pairs.empty()) {
    throw InvalidArgument(Errc::empty_pairs,
                          std::string(what) + ": empty pair list");
  }
  for (const auto& [a, b] : pairs) {
    if (a >= embs.size() || b >= embs.size()) {
      throw InvalidArgument(Errc::invalid_index,
                            std::string(what) + ": pair index out of range");
    }
  }
}

double reduce(double sum, std::size_t count, PairReduction r) {
  return r == PairReduction::mean ? sum / static_cast<double>(count) : sum;
}

}  // namespace

double positive_pair_loss(std::span<const Vec> embs,
                          std::span<const IndexPair> pairs,
                          const LossConfig& cfg) {
  cfg.validate();
  check_pairs(embs, pairs, "positive_pair_loss");
  double acc = 0.0;
  for (const auto& [a, b] : pairs) {
    const double sig =
        clamped_sigmoid(cosine_sim(embs[a], embs[b]), cfg.sigmoid_clamp);
    acc -= std::log(sig);
  }
  return reduce(acc, pairs.size(), cfg.pair_reduction);
}

double negative_pair_loss(std::span<const Vec> embs,
                          std::span<const IndexPair> pairs,
                          const LossConfig& cfg) {
  cfg.validate();
  check_pairs(embs, pairs, "negative_pair_loss");
  double acc = 0.0;
  for (const auto& [a, b] : pairs) {
    const double sig =
        clamped_sigmoid(cosine_sim(embs[a], embs[b]), cfg.sigmoid_clamp);
    acc += std::log(1.0 - sig);
  }
  const double reduced = reduce(acc, pairs.size(), cfg.pair_reduction);
  return cfg.neg_sign == NegSign::corrected ? -reduced : reduced;
}

std::vector<Vec> flatten_views(std::span<const MultiviewEmbedding> views) {
  std::vector<Vec> out;
  out.reserve(views.size() * kViewsPerSubject);
  for (const auto& mv : views) {
    out.push_back(mv.front);
    out.push_back(mv.right);
    out.push_back(mv.left);
  }
  return out;
}

namespace {

std::pair<std::vector<Vec>, std::vector<Vec>> view_batch_parts(
    std::span<const MultiviewEmbedding> views, std::span<const Vec> texts) {
  if (views.empty() || views.size() != texts.size()) {
    throw InvalidArgument(Errc::dimension_mismatch,
                          "make_view_batch: need equal, non-empty lists");
  }
  std::vector<Vec> visual = flatten_views(views);
  std::vector<Vec> textual;
  textual.reserve(visual.size());
  for (const Vec& t : texts) {
    for (std::size_t k = 0; k < kViewsPerSubject; ++k) textual.push_back(t);
  }
  return {std::move(visual), std::move(textual)};
}

}  // namespace

Batch make_view_batch(std::span<const MultiviewEmbedding> views,
                      std::span<const Vec> texts) {
  auto [visual, textual] = view_batch_parts(views, texts);
  return Batch(std::move(visual), std::move(textual));
}

Batch make_view_batch(std::span<const MultiviewEmbedding> views,
                      std::span<const Vec> texts, unchecked_t) {
  auto [visual, textual] = view_batch_parts(views, texts);
  return Batch(std::move(visual), std::move(textual), unchecked);
}

LossReport total_loss(const Batch& b, std::span<const MultiviewEmbedding> views,
                      std::span<const Vec> texts, const PairSets& ps,
                      const LossConfig& cfg) {
  cfg.validate();
  LossReport rep;
  rep.image_to_text = image_to_text_loss(b, cfg);
  rep.text_to_image = text_to_image_loss(b, cfg);
  rep.contrastive = (rep.image_to_text + rep.text_to_image) / 2.0;
  rep.consistency = multiview_consistency_loss(views, texts);
  const std::vector<Vec> flat = flatten_views(views);
  rep.positive =
      ps.positives.empty() ? 0.0 : positive_pair_loss(flat, ps.positives, cfg);
  rep.negative =
      ps.negatives.empty() ? 0.0 : negative_pair_loss(flat, ps.negatives, cfg);
  rep.total = cfg.weight_contrastive * rep.contrastive +
              cfg.weight_consistency * rep.consistency +
              cfg.weight_pos * rep.positive + cfg.weight_neg * rep.negative;
  return rep;
}

}  // namespace mvcl
