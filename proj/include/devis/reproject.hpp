#pragma once

#include "devis/geometry.hpp"
#include "devis/image.hpp"

namespace devis {

/// Forward-warp output: warped colors, visibility mask, and target-view
/// z-buffer depth (sentinel where not visible).
struct ReprojectionResult {
    VideoClip clip;
    MaskClip mask;
    DepthClip depth;
};

struct FrameReprojection {
    Frame frame;
    MaskFrame mask;
    DepthMap depth;
};

/// Depth-based forward splatting into the target view.
///
/// Every non-sentinel source pixel is unprojected with its depth,
/// transformed by `relative_pose` and splatted with a 2x2-pixel square
/// footprint centered at the projected subpixel location (pixels whose
/// centers fall strictly inside the square; on-boundary centers are
/// excluded, so a warp landing exactly on pixel centers touches only the
/// containing pixel and the identity warp is bit-exact).
///
/// The z-buffer prefers the splat whose projected point lands inside the
/// pixel (its primary pixel), then smaller target depth, then lower source
/// row-major index. Only primary coverage marks a pixel visible; footprint
/// overflow paints color to suppress pinhole speckle but stays mask 0 with
/// sentinel depth, so masked metrics never read resampled boundary guesses.
FrameReprojection reproject_frame(const Frame& frame, const DepthMap& depth,
                                  const Intrinsics& intr,
                                  const Pose& relative_pose);

/// Frame-wise warp of a whole clip with per-frame relative poses.
ReprojectionResult reproject_clip(const VideoClip& clip,
                                  const DepthClip& depths,
                                  const Intrinsics& intr,
                                  const Trajectory& traj);

/// Mean visibility over all frames and pixels.
double visible_fraction(const MaskClip& mask);

}  // namespace devis
