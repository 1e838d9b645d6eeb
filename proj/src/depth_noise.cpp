#include "devis/depth_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "devis/rng.hpp"

namespace devis {

void DepthNoiseModel::validate() const {
    if (multiplicative_sigma < 0.0 || boundary_blur_radius < 0 ||
        edge_threshold < 0.0)
        throw std::invalid_argument("depth noise: negative parameter");
}

DepthMap estimate_depth_frame(const DepthMap& true_depth,
                              const DepthNoiseModel& model, int frame_index) {
    model.validate();
    const int w = true_depth.width;
    const int h = true_depth.height;
    DepthMap noisy = true_depth;

    if (model.multiplicative_sigma > 0.0) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                float d = true_depth.at(x, y);
                if (is_sentinel(d)) continue;
                Rng rng(mix_seed({model.seed,
                                  static_cast<std::uint64_t>(frame_index),
                                  static_cast<std::uint64_t>(y) *
                                          static_cast<std::uint64_t>(w) +
                                      static_cast<std::uint64_t>(x)}));
                double eps = rng.normal(0.0, model.multiplicative_sigma);
                noisy.at(x, y) = static_cast<float>(d * std::exp(eps));
            }
        }
    }

    if (model.boundary_blur_radius <= 0) return noisy;

    // Discontinuity flags from the 8-neighborhood range of the noisy map.
    std::vector<std::uint8_t> edge(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (is_sentinel(noisy.at(x, y))) continue;
            float lo = noisy.at(x, y);
            float hi = lo;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    float v = noisy.at(nx, ny);
                    if (is_sentinel(v)) continue;
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            if (hi - lo > model.edge_threshold)
                edge[static_cast<std::size_t>(y) * w + x] = 1;
        }
    }

    DepthMap out = noisy;
    const int r = model.boundary_blur_radius;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!edge[static_cast<std::size_t>(y) * w + x]) continue;
            double acc = 0.0;
            int n = 0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    float v = noisy.at(nx, ny);
                    if (is_sentinel(v)) continue;
                    acc += v;
                    ++n;
                }
            }
            if (n > 0) out.at(x, y) = static_cast<float>(acc / n);
        }
    }
    return out;
}

DepthClip estimate_depth(const DepthClip& true_depth,
                         const DepthNoiseModel& model) {
    DepthClip out;
    out.maps.reserve(true_depth.size());
    for (std::size_t f = 0; f < true_depth.size(); ++f)
        out.maps.push_back(estimate_depth_frame(
            true_depth.maps[f], model, static_cast<int>(f)));
    return out;
}

}  // namespace devis
