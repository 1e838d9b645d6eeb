#include "devis/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "devis/util.hpp"

namespace devis {

namespace {

const Vec3 kLightDir = normalized(Vec3{0.45, 0.8, 0.35});
constexpr double kAmbient = 0.3;
constexpr double kRayEps = 1e-9;

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unnormalized; z-component is 1 in camera coordinates
};

struct Hit {
    double t = std::numeric_limits<double>::infinity();
    Vec3 normal;
    Vec3 color;
    bool valid() const { return std::isfinite(t); }
};

bool hit_sphere(const Ray& ray, const Vec3& center, double radius,
                double& t_out, Vec3& n_out) {
    Vec3 oc = ray.origin - center;
    double a = dot(ray.dir, ray.dir);
    double b = 2.0 * dot(ray.dir, oc);
    double c = dot(oc, oc) - radius * radius;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return false;
    double sq = std::sqrt(disc);
    double t = (-b - sq) / (2.0 * a);
    if (t <= kRayEps) t = (-b + sq) / (2.0 * a);
    if (t <= kRayEps) return false;
    t_out = t;
    n_out = normalized(ray.origin + ray.dir * t - center);
    return true;
}

Vec3 rotate_y(const Vec3& v, double s, double c) {
    return {v.x * c + v.z * s, v.y, -v.x * s + v.z * c};
}

bool hit_box(const Ray& ray, const Vec3& center, double half, double angle,
             double& t_out, Vec3& n_out) {
    double s = std::sin(angle), c = std::cos(angle);
    // Into the box's local frame (inverse rotation about y).
    Vec3 o = rotate_y(ray.origin - center, -s, c);
    Vec3 d = rotate_y(ray.dir, -s, c);

    double t_near = -std::numeric_limits<double>::infinity();
    double t_far = std::numeric_limits<double>::infinity();
    int near_axis = -1;
    double near_sign = 1.0;
    const double od[3] = {o.x, o.y, o.z};
    const double dd[3] = {d.x, d.y, d.z};
    for (int axis = 0; axis < 3; ++axis) {
        if (std::abs(dd[axis]) < 1e-15) {
            if (std::abs(od[axis]) > half) return false;
            continue;
        }
        double inv = 1.0 / dd[axis];
        double t0 = (-half - od[axis]) * inv;
        double t1 = (half - od[axis]) * inv;
        double sign = -1.0;
        if (t0 > t1) {
            std::swap(t0, t1);
            sign = 1.0;
        }
        if (t0 > t_near) {
            t_near = t0;
            near_axis = axis;
            near_sign = sign;
        }
        t_far = std::min(t_far, t1);
        if (t_near > t_far) return false;
    }
    if (near_axis < 0 || t_near <= kRayEps) return false;
    t_out = t_near;
    Vec3 local_n{0, 0, 0};
    if (near_axis == 0) local_n.x = near_sign;
    if (near_axis == 1) local_n.y = near_sign;
    if (near_axis == 2) local_n.z = near_sign;
    n_out = rotate_y(local_n, s, c);
    return true;
}

double lambert(const Vec3& n) {
    return kAmbient + (1.0 - kAmbient) * std::max(0.0, dot(n, kLightDir));
}

struct Traced {
    Vec3 color;
    bool primitive = false;
    double t = 0.0;
};

Traced trace(const SceneSpec& scene, const Ray& ray, const Hit& best) {
    // Ground plane and sky contribute color but never depth.
    double tg = std::numeric_limits<double>::infinity();
    if (std::abs(ray.dir.y) > 1e-15) {
        double tc = (scene.ground.height - ray.origin.y) / ray.dir.y;
        if (tc > kRayEps) tg = tc;
    }
    if (best.valid() && best.t < tg)
        return {best.color * lambert(best.normal), true, best.t};
    if (std::isfinite(tg)) {
        Vec3 p = ray.origin + ray.dir * tg;
        double period = scene.ground.checker_period;
        long long ix = static_cast<long long>(std::floor(p.x / period));
        long long iz = static_cast<long long>(std::floor(p.z / period));
        const Vec3& base =
            ((ix + iz) & 1) ? scene.ground.color_b : scene.ground.color_a;
        return {base * lambert(Vec3{0, 1, 0}), false, 0.0};
    }
    return {scene.sky_color, false, 0.0};
}

}  // namespace

void SceneSpec::validate() const {
    if (!(extent > 0.0))
        throw std::invalid_argument("scene: extent must be > 0");
    auto check_color = [](const Vec3& c) {
        return c.x >= 0 && c.x <= 1 && c.y >= 0 && c.y <= 1 && c.z >= 0 &&
               c.z <= 1;
    };
    for (const auto& p : primitives) {
        if (!(p.half_size > 0.0) || p.half_size >= extent)
            throw std::invalid_argument(
                "scene: primitive half-size outside (0, extent)");
        if (!check_color(p.base_color))
            throw std::invalid_argument("scene: color outside [0,1]");
    }
    if (!check_color(ground.color_a) || !check_color(ground.color_b) ||
        !check_color(sky_color))
        throw std::invalid_argument("scene: color outside [0,1]");
    if (!(ground.checker_period > 0.0))
        throw std::invalid_argument("scene: checker period must be > 0");
}

SceneSpec build_scene(std::uint64_t seed, Difficulty difficulty) {
    Rng rng(mix_seed({seed, 0x5ce7e5ULL}));
    SceneSpec scene;
    scene.seed = seed;
    scene.extent = 3.0;

    int count = difficulty == Difficulty::Simple
                    ? 2 + static_cast<int>(rng.uniform_index(3))
                    : 5 + static_cast<int>(rng.uniform_index(4));

    // Saturated palette; varied enough that PSNR separates misplaced fills.
    const Vec3 palette[] = {
        {0.85, 0.25, 0.22}, {0.22, 0.45, 0.85}, {0.92, 0.78, 0.20},
        {0.30, 0.72, 0.35}, {0.78, 0.35, 0.78}, {0.95, 0.55, 0.25},
        {0.25, 0.75, 0.75}, {0.88, 0.88, 0.85},
    };

    for (int i = 0; i < count; ++i) {
        Primitive prim;
        prim.shape = rng.uniform() < 0.6 ? ShapeKind::Sphere : ShapeKind::Box;
        prim.half_size = rng.uniform(0.35, 0.85);
        prim.base_color = palette[rng.uniform_index(8)];
        double spread = scene.extent * 0.62;
        prim.center = Vec3{rng.uniform(-spread, spread),
                           scene.ground.height + prim.half_size +
                               rng.uniform(0.05, 1.4),
                           rng.uniform(-spread, spread)};
        prim.velocity = Vec3{rng.uniform(-0.05, 0.05), 0.0,
                             rng.uniform(-0.05, 0.05)};
        prim.angular_rate = prim.shape == ShapeKind::Box
                                ? rng.uniform(-0.06, 0.06)
                                : 0.0;
        scene.primitives.push_back(prim);
    }
    scene.validate();
    return scene;
}

RenderResult render(const SceneSpec& scene, const Intrinsics& intr,
                    const Pose& pose, double t) {
    intr.validate();
    scene.validate();
    if (t < 0.0) throw std::invalid_argument("render: negative frame time");

    RenderResult out;
    out.frame = Frame(intr.width, intr.height);
    out.depth = DepthMap(intr.width, intr.height);

    Mat3 rot_t = transpose(pose.rotation);
    Vec3 eye = pose.center();

    for (int y = 0; y < intr.height; ++y) {
        for (int x = 0; x < intr.width; ++x) {
            Vec3 dir_cam{(x + 0.5 - intr.cx) / intr.fx,
                         (y + 0.5 - intr.cy) / intr.fy, 1.0};
            Ray ray{eye, rot_t * dir_cam};

            Hit best;
            for (const auto& prim : scene.primitives) {
                double th;
                Vec3 nh;
                bool hit = false;
                Vec3 c = prim.center_at(t);
                if (prim.shape == ShapeKind::Sphere)
                    hit = hit_sphere(ray, c, prim.half_size, th, nh);
                else
                    hit = hit_box(ray, c, prim.half_size,
                                  prim.angular_rate * t, th, nh);
                if (hit && th < best.t) {
                    best.t = th;
                    best.normal = nh;
                    best.color = prim.base_color;
                }
            }

            Traced traced = trace(scene, ray, best);
            float* px = out.frame.at(x, y);
            px[0] = static_cast<float>(std::clamp(traced.color.x, 0.0, 1.0));
            px[1] = static_cast<float>(std::clamp(traced.color.y, 0.0, 1.0));
            px[2] = static_cast<float>(std::clamp(traced.color.z, 0.0, 1.0));
            if (traced.primitive)
                out.depth.at(x, y) = static_cast<float>(traced.t);
        }
    }
    return out;
}

ClipRenderResult render_clip(const SceneSpec& scene, const Intrinsics& intr,
                             const Trajectory& camera_poses, int n_frames,
                             const std::vector<int>& times) {
    if (n_frames < 1)
        throw std::invalid_argument("render_clip: need at least one frame");
    if (camera_poses.size() != static_cast<std::size_t>(n_frames))
        throw std::invalid_argument("render_clip: one pose per frame required");
    if (!times.empty() && times.size() != static_cast<std::size_t>(n_frames))
        throw std::invalid_argument("render_clip: times/frames mismatch");

    ClipRenderResult out;
    out.clip.frames.resize(static_cast<std::size_t>(n_frames));
    out.depth.maps.resize(static_cast<std::size_t>(n_frames));
    parallel_for(n_frames, [&](int f) {
        double t = times.empty() ? f : times[static_cast<std::size_t>(f)];
        RenderResult r =
            render(scene, intr, camera_poses.poses[static_cast<std::size_t>(f)], t);
        out.clip.frames[static_cast<std::size_t>(f)] = std::move(r.frame);
        out.depth.maps[static_cast<std::size_t>(f)] = std::move(r.depth);
    });
    return out;
}

}  // namespace devis
