#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "colscale/document.hpp"
#include "colscale/features.hpp"

namespace col {

// One of the 24 reference texts: automatically extracted feature values and
// the published one-dimensional position.
struct ReferenceText {
  std::string_view doc_id;  // D_ = literacy, N_ = orality
  ColClass label;
  std::string_view genre;
  int century;
  double published_col;
  std::array<double, kFeatureCount> features;
};

std::span<const ReferenceText> reference_texts();
std::vector<FeatureVector> reference_feature_vectors();

}  // namespace col
