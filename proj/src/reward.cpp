#include "devis/reward.hpp"

#include <algorithm>
#include <cmath>

#include "devis/rng.hpp"

namespace devis {

namespace {

constexpr double kPsnrCap = 100.0;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;
constexpr int kSsimWindow = 8;
constexpr int kSsimStride = 4;

void require_metric_shapes(const VideoClip& a, const VideoClip& b,
                           const MaskClip& mask) {
    require_same_shape(a, b, "masked metric");
    if (mask.size() != a.size() || mask.width() != a.width() ||
        mask.height() != a.height())
        throw std::invalid_argument("masked metric: mask dimensions differ");
}

}  // namespace

double masked_psnr(const VideoClip& a, const VideoClip& b,
                   const MaskClip& mask) {
    require_metric_shapes(a, b, mask);
    double err = 0.0;
    std::size_t n = 0;
    for (std::size_t f = 0; f < a.size(); ++f) {
        const Frame& fa = a.frames[f];
        const Frame& fb = b.frames[f];
        const MaskFrame& fm = mask.frames[f];
        for (std::size_t p = 0; p < fm.data.size(); ++p) {
            if (!fm.data[p]) continue;
            for (int c = 0; c < 3; ++c) {
                double d = static_cast<double>(fa.rgb[p * 3 + c]) -
                           static_cast<double>(fb.rgb[p * 3 + c]);
                err += d * d;
            }
            ++n;
        }
    }
    if (n == 0) throw empty_mask_error("masked_psnr: no visible pixels");
    double mse = err / (3.0 * static_cast<double>(n));
    if (mse <= 0.0) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

double masked_ssim(const VideoClip& a, const VideoClip& b,
                   const MaskClip& mask) {
    require_metric_shapes(a, b, mask);
    const int w = a.width();
    const int h = a.height();
    double total = 0.0;
    std::size_t windows = 0;
    const int min_visible = kSsimWindow * kSsimWindow * 3 / 4;

    for (std::size_t f = 0; f < a.size(); ++f) {
        const Frame& fa = a.frames[f];
        const Frame& fb = b.frames[f];
        const MaskFrame& fm = mask.frames[f];
        for (int y0 = 0; y0 + kSsimWindow <= h; y0 += kSsimStride) {
            for (int x0 = 0; x0 + kSsimWindow <= w; x0 += kSsimStride) {
                double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
                int n = 0;
                for (int y = y0; y < y0 + kSsimWindow; ++y) {
                    for (int x = x0; x < x0 + kSsimWindow; ++x) {
                        if (!fm.at(x, y)) continue;
                        double la = luminance(fa.at(x, y));
                        double lb = luminance(fb.at(x, y));
                        sa += la;
                        sb += lb;
                        saa += la * la;
                        sbb += lb * lb;
                        sab += la * lb;
                        ++n;
                    }
                }
                if (n < min_visible) continue;
                double inv = 1.0 / n;
                double mu_a = sa * inv;
                double mu_b = sb * inv;
                double var_a = saa * inv - mu_a * mu_a;
                double var_b = sbb * inv - mu_b * mu_b;
                double cov = sab * inv - mu_a * mu_b;
                double num = (2.0 * mu_a * mu_b + kSsimC1) *
                             (2.0 * cov + kSsimC2);
                double den = (mu_a * mu_a + mu_b * mu_b + kSsimC1) *
                             (var_a + var_b + kSsimC2);
                total += num / den;
                ++windows;
            }
        }
    }
    if (windows == 0)
        throw empty_mask_error("masked_ssim: no contributing window");
    return total / static_cast<double>(windows);
}

namespace {

// Fixed 3->16 channel, 5x5 random kernel bank derived from the proxy seed.
struct KernelBank {
    static constexpr int kChannels = 16;
    static constexpr int kSize = 5;
    std::vector<double> weights;  // [out][in][ky][kx]

    explicit KernelBank(std::uint64_t seed) {
        Rng rng(mix_seed({seed, 0x1f1f5ULL}));
        weights.resize(kChannels * 3 * kSize * kSize);
        for (auto& v : weights) v = rng.normal() / (kSize * kSize);
    }

    double at(int oc, int ic, int ky, int kx) const {
        return weights[((oc * 3 + ic) * kSize + ky) * kSize + kx];
    }
};

// Per-location unit-normalized feature map of one frame.
std::vector<double> feature_map(const Frame& frame, const KernelBank& bank) {
    const int w = frame.width;
    const int h = frame.height;
    const int half = KernelBank::kSize / 2;
    std::vector<double> feats(static_cast<std::size_t>(w) * h *
                              KernelBank::kChannels);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc[KernelBank::kChannels] = {};
            for (int ky = 0; ky < KernelBank::kSize; ++ky) {
                int sy = std::min(std::max(y + ky - half, 0), h - 1);
                for (int kx = 0; kx < KernelBank::kSize; ++kx) {
                    int sx = std::min(std::max(x + kx - half, 0), w - 1);
                    const float* px = frame.at(sx, sy);
                    for (int ic = 0; ic < 3; ++ic) {
                        double v = px[ic];
                        for (int oc = 0; oc < KernelBank::kChannels; ++oc)
                            acc[oc] += bank.at(oc, ic, ky, kx) * v;
                    }
                }
            }
            double norm_sq = 0.0;
            for (double v : acc) norm_sq += v * v;
            double inv = 1.0 / (std::sqrt(norm_sq) + 1e-10);
            double* out = feats.data() +
                          (static_cast<std::size_t>(y) * w + x) *
                              KernelBank::kChannels;
            for (int oc = 0; oc < KernelBank::kChannels; ++oc)
                out[oc] = acc[oc] * inv;
        }
    }
    return feats;
}

Frame downsample2(const Frame& frame) {
    int w2 = std::max(1, frame.width / 2);
    int h2 = std::max(1, frame.height / 2);
    Frame out(w2, h2);
    for (int y = 0; y < h2; ++y) {
        for (int x = 0; x < w2; ++x) {
            double acc[3] = {};
            int n = 0;
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    int sx = 2 * x + dx;
                    int sy = 2 * y + dy;
                    if (sx >= frame.width || sy >= frame.height) continue;
                    const float* px = frame.at(sx, sy);
                    for (int c = 0; c < 3; ++c) acc[c] += px[c];
                    ++n;
                }
            }
            float* px = out.at(x, y);
            for (int c = 0; c < 3; ++c)
                px[c] = static_cast<float>(acc[c] / n);
        }
    }
    return out;
}

double frame_feature_distance(const Frame& fa, const Frame& fb,
                              const KernelBank& bank) {
    std::vector<double> va = feature_map(fa, bank);
    std::vector<double> vb = feature_map(fb, bank);
    double acc = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        double d = va[i] - vb[i];
        acc += d * d;
    }
    return acc / static_cast<double>(va.size());
}

}  // namespace

double lpips_proxy(const VideoClip& a, const VideoClip& b,
                   std::uint64_t proxy_seed) {
    require_same_shape(a, b, "lpips_proxy");
    KernelBank bank(proxy_seed);
    double acc = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) {
        double full = frame_feature_distance(a.frames[f], b.frames[f], bank);
        double half = frame_feature_distance(downsample2(a.frames[f]),
                                             downsample2(b.frames[f]), bank);
        acc += 0.5 * (full + half);
    }
    return acc / static_cast<double>(a.size());
}

double image_quality_proxy(const VideoClip& clip) {
    if (clip.empty())
        throw std::invalid_argument("image_quality_proxy: empty clip");
    constexpr double kSquash = 0.05;
    double acc = 0.0;
    for (const Frame& frame : clip.frames) {
        double grad_sum = 0.0;
        std::size_t n = 0;
        for (int y = 1; y + 1 < frame.height; ++y) {
            for (int x = 1; x + 1 < frame.width; ++x) {
                double gx = (luminance(frame.at(x + 1, y)) -
                             luminance(frame.at(x - 1, y))) *
                            0.5;
                double gy = (luminance(frame.at(x, y + 1)) -
                             luminance(frame.at(x, y - 1))) *
                            0.5;
                grad_sum += std::sqrt(gx * gx + gy * gy);
                ++n;
            }
        }
        double mean_grad = n ? grad_sum / static_cast<double>(n) : 0.0;
        acc += mean_grad / (mean_grad + kSquash);
    }
    return acc / static_cast<double>(clip.size());
}

void RewardConfig::validate() const {
    if (!(psnr_threshold > 0.0) || !(ssim_threshold > 0.0))
        throw std::invalid_argument("reward: thresholds must be > 0");
    bool any = false;
    for (int w : weights) {
        if (w != 0 && w != 1)
            throw std::invalid_argument("reward: weights must be 0/1");
        any = any || w == 1;
    }
    if (!any)
        throw std::invalid_argument("reward: at least one weight must be 1");
}

double combine_reward_terms(double lpips, double psnr, double ssim,
                            double quality, const RewardConfig& cfg) {
    return cfg.weights[0] * (1.0 - lpips) +
           cfg.weights[1] * (psnr / cfg.psnr_threshold) +
           cfg.weights[2] * (ssim / cfg.ssim_threshold) +
           cfg.weights[3] * quality;
}

RewardVector composite_reward(const VideoClip& gen,
                              const ReprojectionResult& reproj,
                              const RewardConfig& cfg,
                              const VideoClip* reference) {
    cfg.validate();
    require_same_shape(gen, reproj.clip, "composite_reward");

    RewardVector rv;
    const VideoClip* perceptual_ref =
        cfg.lpips_against_reference && reference ? reference : &reproj.clip;
    rv.lpips = lpips_proxy(gen, *perceptual_ref, cfg.proxy_seed);
    rv.quality = image_quality_proxy(gen);

    double p_term = 0.0;
    double s_term = 0.0;
    try {
        rv.psnr = masked_psnr(gen, reproj.clip, reproj.mask);
        p_term = rv.psnr / cfg.psnr_threshold;
    } catch (const empty_mask_error&) {
        rv.psnr = 0.0;
    }
    try {
        rv.ssim = masked_ssim(gen, reproj.clip, reproj.mask);
        s_term = rv.ssim / cfg.ssim_threshold;
    } catch (const empty_mask_error&) {
        rv.ssim = 0.0;
    }

    rv.composite = cfg.weights[0] * (1.0 - rv.lpips) +
                   cfg.weights[1] * p_term + cfg.weights[2] * s_term +
                   cfg.weights[3] * rv.quality;
    return rv;
}

}  // namespace devis
