#include "devis/reproject.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "devis/util.hpp"

namespace devis {

namespace {

struct SplatSlot {
    std::uint8_t cls = 2;  // 0 primary, 1 secondary, 2 empty
    double z = std::numeric_limits<double>::infinity();
    std::uint32_t src = 0;
    float r = 0.f, g = 0.f, b = 0.f;

    bool beats(std::uint8_t ncls, double nz, std::uint32_t nsrc) const {
        if (cls != ncls) return cls < ncls;
        if (z != nz) return z < nz;
        return src < nsrc;
    }
};

}  // namespace

FrameReprojection reproject_frame(const Frame& frame, const DepthMap& depth,
                                  const Intrinsics& intr,
                                  const Pose& relative_pose) {
    if (frame.width != depth.width || frame.height != depth.height)
        throw std::invalid_argument("reproject: frame/depth size mismatch");
    intr.validate();

    const int w = frame.width;
    const int h = frame.height;
    FrameReprojection out;
    out.frame = Frame(w, h);
    out.mask = MaskFrame(w, h, 0);
    out.depth = DepthMap(w, h);

    std::vector<SplatSlot> slots(static_cast<std::size_t>(w) * h);

    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            std::uint32_t src_idx = static_cast<std::uint32_t>(sy) *
                                        static_cast<std::uint32_t>(w) +
                                    static_cast<std::uint32_t>(sx);
            float d = depth.at(sx, sy);
            if (is_sentinel(d)) continue;

            Vec3 cam_src{(sx + 0.5 - intr.cx) / intr.fx * d,
                         (sy + 0.5 - intr.cy) / intr.fy * d,
                         static_cast<double>(d)};
            Vec3 cam_tgt = relative_pose.apply(cam_src);
            if (cam_tgt.z <= 1e-9) continue;

            double u = intr.fx * cam_tgt.x / cam_tgt.z + intr.cx;
            double v = intr.fy * cam_tgt.y / cam_tgt.z + intr.cy;
            int pu = static_cast<int>(std::floor(u));
            int pv = static_cast<int>(std::floor(v));
            const float* px = frame.at(sx, sy);

            // Footprint: pixel centers strictly inside (u-1, u+1)x(v-1, v+1).
            for (int ty = pv - 1; ty <= pv + 1; ++ty) {
                if (ty < 0 || ty >= h) continue;
                if (std::abs(ty + 0.5 - v) >= 1.0) continue;
                for (int tx = pu - 1; tx <= pu + 1; ++tx) {
                    if (tx < 0 || tx >= w) continue;
                    if (std::abs(tx + 0.5 - u) >= 1.0) continue;
                    std::uint8_t cls = (tx == pu && ty == pv) ? 0 : 1;
                    SplatSlot& slot =
                        slots[static_cast<std::size_t>(ty) * w + tx];
                    if (slot.beats(cls, cam_tgt.z, src_idx)) continue;
                    slot.cls = cls;
                    slot.z = cam_tgt.z;
                    slot.src = src_idx;
                    slot.r = px[0];
                    slot.g = px[1];
                    slot.b = px[2];
                }
            }
        }
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const SplatSlot& slot = slots[static_cast<std::size_t>(y) * w + x];
            if (slot.cls == 2) continue;
            float* px = out.frame.at(x, y);
            px[0] = slot.r;
            px[1] = slot.g;
            px[2] = slot.b;
            if (slot.cls == 0) {
                out.mask.at(x, y) = 1;
                out.depth.at(x, y) = static_cast<float>(slot.z);
            }
        }
    }
    return out;
}

ReprojectionResult reproject_clip(const VideoClip& clip,
                                  const DepthClip& depths,
                                  const Intrinsics& intr,
                                  const Trajectory& traj) {
    if (clip.size() != depths.size() || clip.size() != traj.size())
        throw std::invalid_argument("reproject_clip: length mismatch");
    ReprojectionResult out;
    const int n = static_cast<int>(clip.size());
    out.clip.frames.resize(clip.size());
    out.clip.frame_rate = clip.frame_rate;
    out.mask.frames.resize(clip.size());
    out.depth.maps.resize(clip.size());
    parallel_for(n, [&](int f) {
        auto fi = static_cast<std::size_t>(f);
        FrameReprojection fr = reproject_frame(clip.frames[fi], depths.maps[fi],
                                               intr, traj.poses[fi]);
        out.clip.frames[fi] = std::move(fr.frame);
        out.mask.frames[fi] = std::move(fr.mask);
        out.depth.maps[fi] = std::move(fr.depth);
    });
    return out;
}

double visible_fraction(const MaskClip& mask) {
    if (mask.frames.empty())
        throw std::invalid_argument("visible_fraction: empty mask");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& f : mask.frames) {
        for (std::uint8_t v : f.data) sum += v;
        count += f.data.size();
    }
    return sum / static_cast<double>(count);
}

}  // namespace devis
