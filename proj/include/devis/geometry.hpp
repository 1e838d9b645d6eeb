#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "devis/rng.hpp"

namespace devis {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }
    double operator()(int r, int c) const { return m[r * 3 + c]; }
    double& operator()(int r, int c) { return m[r * 3 + c]; }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 transpose(const Mat3& a);
double determinant(const Mat3& a);

/// Pinhole camera; cx/cy in pixels, pixel (ix, iy) has center
/// (ix + 0.5, iy + 0.5) in continuous image coordinates.
struct Intrinsics {
    double fx = 0.0, fy = 0.0;
    double cx = 0.0, cy = 0.0;
    int width = 0, height = 0;

    void validate() const;
};

/// Symmetric pinhole from a horizontal field of view.
Intrinsics make_intrinsics(int width, int height, double hfov_deg);

/// Rigid world-to-camera transform: x_cam = R * x_world + t.
/// Camera axes: x right, y down, z forward.
struct Pose {
    Mat3 rotation;
    Vec3 translation;

    /// Camera center in world coordinates (-R^T t).
    Vec3 center() const;
    Vec3 apply(const Vec3& world) const;
};

/// a followed by b as one transform: result.apply(x) = b.apply(a.apply(x)).
/// The rotation is re-orthonormalized so chained composition keeps the
/// orthogonality invariants inside fixed tolerances.
Pose compose(const Pose& a, const Pose& b);
Pose invert(const Pose& p);
Pose identity_pose();

/// True when rotations and translations agree element-wise within tol.
bool approx_equal(const Pose& a, const Pose& b, double tol);

/// World-to-camera pose placing the camera at `eye` aimed at `target`,
/// y-down image axes, world +y treated as up.
Pose look_at(const Vec3& eye, const Vec3& target);

/// Camera motion on an orbit around `pivot`: azimuth about the world
/// vertical axis, elevation toward it, multiplicative distance change.
/// Angles in radians. Composition of motions about one pivot is additive in
/// (azimuth, elevation, log radius_scale), which makes decomposition exact.
struct OrbitMotion {
    double azimuth = 0.0;
    double elevation = 0.0;
    double radius_scale = 1.0;
    Vec3 pivot{0.0, 0.0, 0.0};

    void validate() const;
};

OrbitMotion zero_motion(const Vec3& pivot = {0, 0, 0});

/// Parameter-space sum of two motions about the same pivot.
OrbitMotion combine(const OrbitMotion& a, const OrbitMotion& b);

/// Spherical-coordinate move of the camera about motion.pivot followed by
/// re-aiming at the pivot. The base camera must not sit on the pivot.
Pose orbit_pose(const Pose& base, const OrbitMotion& motion);

/// Relative pose mapping base-camera coordinates to the orbited camera's
/// coordinates; this is the warp transform fed to reprojection.
Pose relative_pose(const Pose& base, const OrbitMotion& motion);

/// Per-frame relative poses, one per clip frame.
struct Trajectory {
    std::vector<Pose> poses;

    std::size_t size() const { return poses.size(); }
};

/// Constant trajectory: every frame warps by the same orbit motion.
Trajectory constant_trajectory(const Pose& base, const OrbitMotion& motion,
                               std::size_t n_frames);

/// Splits a motion into increments scaled by `fractions` (each > 0, summing
/// to 1 within 1e-9). Increment i carries fraction_i of the azimuth,
/// elevation and log radius-scale; applying all increments in order equals
/// applying the total.
std::vector<OrbitMotion> decompose(const OrbitMotion& total,
                                   const std::vector<double>& fractions);

struct Decomposition {
    int n_steps = 0;
    std::vector<double> fractions;
    std::vector<OrbitMotion> increments;
};

/// Random decomposition: n drawn uniformly from {1..n_max}, fractions from a
/// symmetric Dirichlet(1) clamped to >= 0.05 and renormalized.
Decomposition sample_decomposition(const OrbitMotion& total, int n_max,
                                   Rng& rng);

/// Bullet-time expansion: `m` interpolated motions sweeping from step_start
/// toward step_end (reaching step_end at entry m), followed by the given
/// tail trajectory. Also returns the source-frame index for every output
/// frame: m copies of frame 0, then 1..l-1.
struct BulletTimeExpansion {
    std::vector<int> frame_index_map;
    Trajectory trajectory;
    std::vector<OrbitMotion> frame_motions;
};

BulletTimeExpansion bullet_time_expand(int source_len, int m,
                                       const OrbitMotion& step_start,
                                       const OrbitMotion& step_end,
                                       const Pose& base,
                                       const std::vector<OrbitMotion>&
                                           tail_motions);

}  // namespace devis
