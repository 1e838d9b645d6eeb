#pragma once

#include <cstdint>
#include <vector>

#include "devis/geometry.hpp"
#include "devis/image.hpp"

namespace devis {

enum class ShapeKind { Sphere, Box };

/// One animated primitive. Boxes spin about the vertical axis through their
/// center at `angular_rate` rad/frame; spheres ignore rotation.
struct Primitive {
    ShapeKind shape = ShapeKind::Sphere;
    double half_size = 0.5;
    Vec3 base_color{0.5, 0.5, 0.5};
    Vec3 center{0, 0, 0};
    Vec3 velocity{0, 0, 0};  // world units per frame
    double angular_rate = 0.0;

    Vec3 center_at(double t) const { return center + velocity * t; }
};

struct GroundPlane {
    double height = 0.0;
    double checker_period = 1.0;
    Vec3 color_a{0.32, 0.45, 0.32};
    Vec3 color_b{0.62, 0.60, 0.50};
};

struct SceneSpec {
    std::uint64_t seed = 0;
    double extent = 3.0;
    std::vector<Primitive> primitives;
    GroundPlane ground;
    Vec3 sky_color{0.55, 0.68, 0.85};

    void validate() const;
};

enum class Difficulty { Simple, Cluttered };

/// Deterministic procedural scene: 2-4 primitives (simple) or 5-8
/// (cluttered), all inside the extent, with small per-frame motions.
SceneSpec build_scene(std::uint64_t seed, Difficulty difficulty);

/// Analytic ray cast of the scene at frame time t. Depth records the camera
/// forward-axis distance of primitive hits; ground and sky pixels keep the
/// sentinel and only contribute color.
struct RenderResult {
    Frame frame;
    DepthMap depth;
};

RenderResult render(const SceneSpec& scene, const Intrinsics& intr,
                    const Pose& pose, double t);

/// Per-frame render with primitives advanced by their motions; pose i and
/// frame time `times[i]` (defaults to 0..n-1 when times is empty).
struct ClipRenderResult {
    VideoClip clip;
    DepthClip depth;
};

ClipRenderResult render_clip(const SceneSpec& scene, const Intrinsics& intr,
                             const Trajectory& camera_poses, int n_frames,
                             const std::vector<int>& times = {});

}  // namespace devis
