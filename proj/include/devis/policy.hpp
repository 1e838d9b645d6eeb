#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "devis/image.hpp"
#include "devis/reproject.hpp"
#include "devis/rng.hpp"

namespace devis {

/// Context feature count (excluding the bias input).
inline constexpr int kPolicyFeatures = 10;
inline constexpr int kPolicyWeights = kPolicyFeatures + 1;

/// Linear-Gaussian inpainting policy. Each color channel has its own weight
/// vector over the context features plus bias, and its own log standard
/// deviation. Likelihoods and scores are exact, which keeps importance
/// ratios well-defined during training.
struct PolicyParams {
    std::array<std::array<double, kPolicyWeights>, 3> weights{};
    std::array<double, 3> log_std{-2.0, -2.0, -2.0};
    std::string feature_version = "ctx10-v1";

    void validate() const;
};

/// Copy heuristic start: pass the nearest visible color through, moderate
/// exploration noise.
PolicyParams default_policy_params();

/// Per-pixel conditioning features for one occluded pixel:
///   0-2  nearest visible pixel color
///   3    distance to that pixel, normalized by the image diagonal
///   4-6  reference-clip color at the same coordinates
///   7-8  pixel coordinates normalized to [0,1]
///   9    frame index normalized by (len-1)
/// Fully occluded frames fall back to the reference color with distance 1.
class FeatureExtractor {
public:
    FeatureExtractor(const ReprojectionResult& reproj,
                     const VideoClip& reference);

    std::array<double, kPolicyFeatures> features(int x, int y,
                                                 int frame) const;

    const ReprojectionResult& reproj() const { return *reproj_; }

private:
    const ReprojectionResult* reproj_;
    const VideoClip* reference_;
    double inv_diag_;
    // Per frame: row-major index of the nearest visible pixel (-1 if none)
    // and its squared pixel distance.
    std::vector<std::vector<std::int32_t>> nearest_;
    std::vector<std::vector<double>> dist_sq_;
};

/// One sampled inpainting. Actions are the pre-clamp Gaussian draws on
/// occluded pixels in (frame, row-major pixel, channel) order; the clip
/// stores their clamped values, and visible pixels are bit-exact copies of
/// the conditioning clip.
struct GenerationSample {
    VideoClip clip;
    std::vector<double> actions;
    double log_likelihood = 0.0;
    std::uint64_t rng_seed = 0;
};

GenerationSample generate(const PolicyParams& params,
                          const ReprojectionResult& reproj,
                          const VideoClip& reference, Rng& rng);

/// Log-density of the stored actions under `params`; equals the stored
/// log_likelihood when evaluated with the generating parameters.
double log_prob(const PolicyParams& params, const GenerationSample& sample,
                const ReprojectionResult& reproj, const VideoClip& reference);

/// Flat gradient layout: 3 x kPolicyWeights weight entries then 3 log-std
/// entries.
inline constexpr int kPolicyParamCount = 3 * kPolicyWeights + 3;

struct PolicyGrad {
    std::array<double, kPolicyParamCount> values{};

    double& weight(int channel, int i) {
        return values[static_cast<std::size_t>(channel) * kPolicyWeights + i];
    }
    double& log_std(int channel) {
        return values[3 * kPolicyWeights + channel];
    }
    double weight(int channel, int i) const {
        return values[static_cast<std::size_t>(channel) * kPolicyWeights + i];
    }
    double log_std(int channel) const {
        return values[3 * kPolicyWeights + channel];
    }
};

PolicyGrad grad_log_prob(const PolicyParams& params,
                         const GenerationSample& sample,
                         const ReprojectionResult& reproj,
                         const VideoClip& reference);

/// Sufficient statistics of one generation for likelihood evaluation under
/// arbitrary parameters: per occluded pixel the feature-plus-bias row and
/// the three channel actions.
struct FrozenStep {
    std::vector<double> features;  // kPolicyWeights per occluded pixel
    std::vector<double> actions;   // 3 per occluded pixel
    std::size_t pixel_count() const { return actions.size() / 3; }
};

FrozenStep freeze_step(const ReprojectionResult& reproj,
                       const VideoClip& reference,
                       const GenerationSample& sample);

double log_prob_frozen(const PolicyParams& params, const FrozenStep& step);
void accumulate_grad_frozen(const PolicyParams& params, const FrozenStep& step,
                            double scale, PolicyGrad& grad);

/// JSON round-trip for checkpoints.
std::string policy_to_json(const PolicyParams& params);
PolicyParams policy_from_json(const std::string& text);

}  // namespace devis
