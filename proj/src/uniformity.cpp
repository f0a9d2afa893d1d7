#include "buckyqa/uniformity.hpp"

namespace buckyqa {

UniformityResult assess_uniformity(const DecomposedEffects& effects, const SimilarityParams& params,
                                   bool exclude_diagonal) {
  UniformityResult out;
  out.sample_index = effects.sample_index;
  out.similarity = similarity_matrix(effects.normal, params);
  out.row_means = out.similarity.rowwise().mean();
  out.index = uniformity_index(out.similarity, exclude_diagonal);
  return out;
}

}  // namespace buckyqa
