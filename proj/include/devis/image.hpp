#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace devis {

/// Reserved depth value marking "no surface" pixels. Kept finite so depth
/// arrays stay arithmetic-safe; compared with exact equality and never mixed
/// into filtering or statistics.
inline constexpr float kDepthSentinel = 3.4e38f;

inline bool is_sentinel(float depth) { return depth >= kDepthSentinel; }

/// One RGB frame, row-major, channels interleaved, values in [0, 1].
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<float> rgb;  // 3 * width * height

    Frame() = default;
    Frame(int w, int h, float r = 0.f, float g = 0.f, float b = 0.f)
        : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
        for (std::size_t i = 0; i < rgb.size(); i += 3) {
            rgb[i] = r;
            rgb[i + 1] = g;
            rgb[i + 2] = b;
        }
    }

    std::size_t idx(int x, int y) const {
        return (static_cast<std::size_t>(y) * width + x) * 3;
    }
    float* at(int x, int y) { return rgb.data() + idx(x, y); }
    const float* at(int x, int y) const { return rgb.data() + idx(x, y); }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
};

/// Per-pixel scene depth along the camera forward axis (world units).
struct DepthMap {
    int width = 0;
    int height = 0;
    std::vector<float> depth;  // width * height

    DepthMap() = default;
    DepthMap(int w, int h, float value = kDepthSentinel)
        : width(w), height(h),
          depth(static_cast<std::size_t>(w) * h, value) {}

    float& at(int x, int y) {
        return depth[static_cast<std::size_t>(y) * width + x];
    }
    float at(int x, int y) const {
        return depth[static_cast<std::size_t>(y) * width + x];
    }
};

/// Binary visibility map; 1 = visible, 0 = occluded/hole.
struct MaskFrame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // width * height

    MaskFrame() = default;
    MaskFrame(int w, int h, std::uint8_t value = 0)
        : width(w), height(h),
          data(static_cast<std::size_t>(w) * h, value) {}

    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

struct VideoClip {
    std::vector<Frame> frames;
    double frame_rate = 12.0;

    std::size_t size() const { return frames.size(); }
    bool empty() const { return frames.empty(); }
    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
};

struct DepthClip {
    std::vector<DepthMap> maps;

    std::size_t size() const { return maps.size(); }
    int width() const { return maps.empty() ? 0 : maps.front().width; }
    int height() const { return maps.empty() ? 0 : maps.front().height; }
};

struct MaskClip {
    std::vector<MaskFrame> frames;

    std::size_t size() const { return frames.size(); }
    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
};

/// Rec.601 luma from an interleaved RGB pixel.
inline double luminance(const float* px) {
    return 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
}

inline void require_same_shape(const VideoClip& a, const VideoClip& b,
                               const char* what) {
    if (a.size() != b.size() || a.width() != b.width() ||
        a.height() != b.height())
        throw std::invalid_argument(std::string(what) +
                                    ": clip dimensions differ");
}

}  // namespace devis
