#pragma once

#include <cstdint>

#include "devis/image.hpp"

namespace devis {

/// Corruption model standing in for a monocular depth estimator: per-pixel
/// multiplicative log-normal error plus a box blur across depth
/// discontinuities (where estimators smear object boundaries).
struct DepthNoiseModel {
    double multiplicative_sigma = 0.02;
    int boundary_blur_radius = 1;
    /// Absolute 8-neighborhood depth range marking a discontinuity;
    /// conventionally 5% of the scene extent.
    double edge_threshold = 0.15;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Applies the model. Noise draws come from a per-(frame, pixel) seeded
/// stream, so results are independent of evaluation order; sentinel pixels
/// pass through untouched and positivity is preserved.
DepthClip estimate_depth(const DepthClip& true_depth,
                         const DepthNoiseModel& model);

DepthMap estimate_depth_frame(const DepthMap& true_depth,
                              const DepthNoiseModel& model, int frame_index);

}  // namespace devis
