#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "devis/image.hpp"
#include "devis/reproject.hpp"

namespace devis {

/// Raised when a masked metric has no pixels/windows to aggregate; callers
/// in the reward path convert it to a zero term for the degenerate sample.
class empty_mask_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// PSNR in dB over mask-1 pixels, unit peak, capped at 100 dB when MSE = 0.
double masked_psnr(const VideoClip& a, const VideoClip& b,
                   const MaskClip& mask);

/// Mean SSIM over 8x8 windows (stride 4, luminance channel); a window
/// contributes iff at least 75% of its pixels are visible, and statistics
/// run over the visible pixels it contains. Stabilizers C1 = 0.01^2,
/// C2 = 0.03^2 on unit dynamic range.
double masked_ssim(const VideoClip& a, const VideoClip& b,
                   const MaskClip& mask);

/// Perceptual distance proxy: 16 seeded random 5x5 kernels (3 -> 16
/// channels) at full and 2x-downsampled scale, per-location unit-normalized
/// features, mean squared feature difference.
double lpips_proxy(const VideoClip& a, const VideoClip& b,
                   std::uint64_t proxy_seed);

/// Sharpness score in [0,1]: mean luminance gradient magnitude squashed by
/// x / (x + 0.05), averaged over frames.
double image_quality_proxy(const VideoClip& clip);

struct RewardConfig {
    std::array<int, 4> weights{1, 1, 1, 1};  // (1-lpips), p/p_th, s/s_th, q
    double psnr_threshold = 40.0;
    double ssim_threshold = 1.0;
    std::uint64_t proxy_seed = 7;
    /// Which clip the perceptual term compares against: the reprojected
    /// conditioning clip (default) or the source-view reference clip.
    bool lpips_against_reference = false;

    void validate() const;
};

struct RewardVector {
    double lpips = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
    double quality = 0.0;
    double composite = 0.0;
};

/// Weighted combination of the four normalized terms.
double combine_reward_terms(double lpips, double psnr, double ssim,
                            double quality, const RewardConfig& cfg);

/// Scores a generated clip against its conditioning reprojection. Masked
/// terms that cannot be computed (empty mask) contribute zero. `reference`
/// is consulted only when cfg.lpips_against_reference is set; pass the
/// generation-time reference clip there.
RewardVector composite_reward(const VideoClip& gen,
                              const ReprojectionResult& reproj,
                              const RewardConfig& cfg,
                              const VideoClip* reference = nullptr);

}  // namespace devis
