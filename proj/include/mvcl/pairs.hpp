#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mvcl/linalg.hpp"

namespace mvcl {

enum class View : std::uint8_t { front = 0, right = 1, left = 2 };

inline constexpr std::size_t kViewsPerSubject = 3;

// One encoded view together with the bookkeeping the pair builders need.
struct LabeledView {
  std::int64_t subject_id = 0;
  View view = View::front;
  std::int64_t label = 0;            // pseudo-label from clustering
  std::size_t embedding_index = 0;   // position in the flat embedding list
};

using IndexPair = std::pair<std::size_t, std::size_t>;

// Positive and negative index pairs over a flat embedding universe.
// Pairs are canonical: smaller embedding index first, no self-pairs.
struct PairSets {
  std::vector<IndexPair> positives;
  std::vector<IndexPair> negatives;
  std::size_t universe = 0;
};

// The three same-subject pairings (front,right), (right,left), (front,left)
// for every subject, emitted subject-major in ascending subject id.
// Throws when a subject is missing a view or contributes one twice.
std::vector<IndexPair> build_positive_pairs(
    const std::vector<LabeledView>& views);

// Cross-label pairs. Every view acts as an anchor and draws up to
// `cap_per_anchor` partners with a different label, sampled without
// replacement; duplicates arising from both endpoints anchoring the same
// pair are dropped. Throws when fewer than two distinct labels exist.
std::vector<IndexPair> build_negative_pairs(
    const std::vector<LabeledView>& views, std::size_t cap_per_anchor,
    Rng& rng);

// Uniform without-replacement subsample of each list; the surviving pairs
// keep their original relative order. Caps at or above the list size return
// the list unchanged.
PairSets sample_pairs(const PairSets& ps, std::size_t max_pos,
                      std::size_t max_neg, Rng& rng);

}  // namespace mvcl
