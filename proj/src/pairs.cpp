#include "mvcl/pairs.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>

namespace mvcl {

namespace {

IndexPair canonical(std::size_t a, std::size_t b) {
  return a < b ? IndexPair{a, b} : IndexPair{b, a};
}

}  // namespace

std::vector<IndexPair> build_positive_pairs(
    const std::vector<LabeledView>& views) {
  // subject -> embedding index per view slot
  std::map<std::int64_t, std::array<std::optional<std::size_t>, 3>> by_subject;
  for (const auto& v : views) {
    auto& slots = by_subject[v.subject_id];
    auto& slot = slots[static_cast<std::size_t>(v.view)];
    if (slot.has_value()) {
      throw InvalidArgument(Errc::duplicate_view,
                            "build_positive_pairs: subject " +
                                std::to_string(v.subject_id) +
                                " contributes a view twice");
    }
    slot = v.embedding_index;
  }

  std::vector<IndexPair> out;
  out.reserve(by_subject.size() * 3);
  for (const auto& [subject, slots] : by_subject) {
    for (const auto& slot : slots) {
      if (!slot.has_value()) {
        throw InvalidArgument(Errc::missing_view,
                              "build_positive_pairs: subject " +
                                  std::to_string(subject) +
                                  " is missing a view");
      }
    }
    const std::size_t f = *slots[0], r = *slots[1], l = *slots[2];
    out.push_back(canonical(f, r));
    out.push_back(canonical(r, l));
    out.push_back(canonical(f, l));
  }
  return out;
}

std::vector<IndexPair> build_negative_pairs(
    const std::vector<LabeledView>& views, std::size_t cap_per_anchor,
    Rng& rng) {
  if (cap_per_anchor == 0) {
    throw InvalidArgument(Errc::invalid_value,
                          "build_negative_pairs: cap_per_anchor must be >= 1");
  }
  std::set<std::int64_t> labels;
  for (const auto& v : views) labels.insert(v.label);
  if (labels.size() < 2) {
    throw InvalidArgument(
        Errc::insufficient_labels,
        "build_negative_pairs: need at least two distinct labels");
  }

  // Anchor order follows ascending embedding index so output is a pure
  // function of (views, cap, seed).
  std::vector<const LabeledView*> ordered;
  ordered.reserve(views.size());
  for (const auto& v : views) ordered.push_back(&v);
  std::sort(ordered.begin(), ordered.end(),
            [](const LabeledView* a, const LabeledView* b) {
              return a->embedding_index < b->embedding_index;
            });

  std::vector<IndexPair> out;
  std::set<IndexPair> seen;
  std::vector<std::size_t> candidates;
  for (const LabeledView* anchor : ordered) {
    candidates.clear();
    for (const LabeledView* other : ordered) {
      if (other->label != anchor->label) {
        candidates.push_back(other->embedding_index);
      }
    }
    const std::size_t take = std::min(cap_per_anchor, candidates.size());
    if (take < candidates.size()) {
      // Partial Fisher-Yates: the first `take` entries are a uniform
      // without-replacement draw.
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + rng.next_below(candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
      }
      candidates.resize(take);
    }
    for (std::size_t partner : candidates) {
      const IndexPair p = canonical(anchor->embedding_index, partner);
      if (seen.insert(p).second) out.push_back(p);
    }
  }
  return out;
}

namespace {

std::vector<IndexPair> subsample(const std::vector<IndexPair>& list,
                                 std::size_t cap, Rng& rng) {
  if (cap >= list.size()) return list;
  std::vector<std::size_t> idx(list.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < cap; ++i) {
    const std::size_t j = i + rng.next_below(idx.size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<IndexPair> out;
  out.reserve(cap);
  for (std::size_t i : idx) out.push_back(list[i]);
  return out;
}

}  // namespace

PairSets sample_pairs(const PairSets& ps, std::size_t max_pos,
                      std::size_t max_neg, Rng& rng) {
  if (max_pos == 0 || max_neg == 0) {
    throw InvalidArgument(Errc::invalid_value,
                          "sample_pairs: caps must be >= 1");
  }
  PairSets out;
  out.universe = ps.universe;
  out.positives = subsample(ps.positives, max_pos, rng);
  out.negatives = subsample(ps.negatives, max_neg, rng);
  return out;
}

}  // namespace mvcl
