#include "devis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace devis {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return v * (1.0 / n);
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a(r, k) * b(k, c);
            out(r, c) = s;
        }
    return out;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
            a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
            a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

Mat3 transpose(const Mat3& a) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out(r, c) = a(c, r);
    return out;
}

double determinant(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

void Intrinsics::validate() const {
    if (fx <= 0.0 || fy <= 0.0)
        throw std::invalid_argument("intrinsics: focal length must be > 0");
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("intrinsics: empty image");
    if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
        throw std::invalid_argument(
            "intrinsics: principal point outside image");
}

Intrinsics make_intrinsics(int width, int height, double hfov_deg) {
    Intrinsics intr;
    intr.width = width;
    intr.height = height;
    double f = (width / 2.0) / std::tan(hfov_deg * kPi / 180.0 / 2.0);
    intr.fx = f;
    intr.fy = f;
    intr.cx = width / 2.0;
    intr.cy = height / 2.0;
    intr.validate();
    return intr;
}

Vec3 Pose::center() const {
    return transpose(rotation) * (-translation);
}

Vec3 Pose::apply(const Vec3& world) const {
    return rotation * world + translation;
}

namespace {

// Gram-Schmidt on the rows.
Mat3 reorthonormalize(const Mat3& r) {
    Vec3 r0{r(0, 0), r(0, 1), r(0, 2)};
    Vec3 r1{r(1, 0), r(1, 1), r(1, 2)};
    r0 = normalized(r0);
    r1 = normalized(r1 - r0 * dot(r0, r1));
    Vec3 r2 = cross(r0, r1);
    Mat3 out;
    out(0, 0) = r0.x; out(0, 1) = r0.y; out(0, 2) = r0.z;
    out(1, 0) = r1.x; out(1, 1) = r1.y; out(1, 2) = r1.z;
    out(2, 0) = r2.x; out(2, 1) = r2.y; out(2, 2) = r2.z;
    return out;
}

}  // namespace

Pose compose(const Pose& a, const Pose& b) {
    Pose out;
    out.rotation = reorthonormalize(b.rotation * a.rotation);
    out.translation = b.rotation * a.translation + b.translation;
    return out;
}

Pose invert(const Pose& p) {
    Pose out;
    out.rotation = transpose(p.rotation);
    out.translation = -(out.rotation * p.translation);
    return out;
}

Pose identity_pose() { return Pose{}; }

bool approx_equal(const Pose& a, const Pose& b, double tol) {
    for (int i = 0; i < 9; ++i)
        if (std::abs(a.rotation.m[i] - b.rotation.m[i]) > tol) return false;
    return std::abs(a.translation.x - b.translation.x) <= tol &&
           std::abs(a.translation.y - b.translation.y) <= tol &&
           std::abs(a.translation.z - b.translation.z) <= tol;
}

Pose look_at(const Vec3& eye, const Vec3& target) {
    Vec3 fwd = normalized(target - eye);
    Vec3 up{0.0, 1.0, 0.0};
    if (std::abs(dot(fwd, up)) > 1.0 - 1e-12) up = Vec3{0.0, 0.0, 1.0};
    Vec3 right = normalized(cross(fwd, up));
    Vec3 down = cross(fwd, right);
    Pose p;
    p.rotation(0, 0) = right.x; p.rotation(0, 1) = right.y; p.rotation(0, 2) = right.z;
    p.rotation(1, 0) = down.x;  p.rotation(1, 1) = down.y;  p.rotation(1, 2) = down.z;
    p.rotation(2, 0) = fwd.x;   p.rotation(2, 1) = fwd.y;   p.rotation(2, 2) = fwd.z;
    p.translation = -(p.rotation * eye);
    return p;
}

void OrbitMotion::validate() const {
    if (!(radius_scale > 0.0))
        throw std::invalid_argument("orbit motion: radius_scale must be > 0");
    if (!std::isfinite(azimuth) || !std::isfinite(elevation) ||
        !std::isfinite(radius_scale))
        throw std::invalid_argument("orbit motion: non-finite parameter");
}

OrbitMotion zero_motion(const Vec3& pivot) {
    OrbitMotion m;
    m.pivot = pivot;
    return m;
}

OrbitMotion combine(const OrbitMotion& a, const OrbitMotion& b) {
    OrbitMotion out;
    out.azimuth = a.azimuth + b.azimuth;
    out.elevation = a.elevation + b.elevation;
    out.radius_scale = a.radius_scale * b.radius_scale;
    out.pivot = a.pivot;
    return out;
}

Pose orbit_pose(const Pose& base, const OrbitMotion& motion) {
    motion.validate();
    Vec3 off = base.center() - motion.pivot;
    double r = norm(off);
    if (r < 1e-12)
        throw std::invalid_argument("orbit: camera coincides with pivot");

    // Spherical chart: off = r * (-cos(el)sin(az), sin(el), -cos(el)cos(az)).
    double el = std::asin(std::clamp(off.y / r, -1.0, 1.0));
    double az = std::atan2(-off.x, -off.z);

    double az2 = az + motion.azimuth;
    double el2 = el + motion.elevation;
    double r2 = r * motion.radius_scale;

    Vec3 off2{-r2 * std::cos(el2) * std::sin(az2), r2 * std::sin(el2),
              -r2 * std::cos(el2) * std::cos(az2)};
    return look_at(motion.pivot + off2, motion.pivot);
}

Pose relative_pose(const Pose& base, const OrbitMotion& motion) {
    return compose(invert(base), orbit_pose(base, motion));
}

Trajectory constant_trajectory(const Pose& base, const OrbitMotion& motion,
                               std::size_t n_frames) {
    Trajectory traj;
    traj.poses.assign(n_frames, relative_pose(base, motion));
    return traj;
}

std::vector<OrbitMotion> decompose(const OrbitMotion& total,
                                   const std::vector<double>& fractions) {
    total.validate();
    if (fractions.empty())
        throw std::invalid_argument("decompose: no fractions");
    double sum = 0.0;
    for (double f : fractions) {
        if (!(f > 0.0))
            throw std::invalid_argument("decompose: fractions must be > 0");
        sum += f;
    }
    if (std::abs(sum - 1.0) >= 1e-9)
        throw std::invalid_argument("decompose: fractions must sum to 1");

    double log_rs = std::log(total.radius_scale);
    std::vector<OrbitMotion> out;
    out.reserve(fractions.size());
    for (double f : fractions) {
        OrbitMotion inc;
        inc.azimuth = total.azimuth * f;
        inc.elevation = total.elevation * f;
        inc.radius_scale = std::exp(log_rs * f);
        inc.pivot = total.pivot;
        out.push_back(inc);
    }
    return out;
}

Decomposition sample_decomposition(const OrbitMotion& total, int n_max,
                                   Rng& rng) {
    if (n_max < 1)
        throw std::invalid_argument("sample_decomposition: n_max must be >= 1");
    Decomposition d;
    d.n_steps = static_cast<int>(rng.uniform_index(
                    static_cast<std::uint64_t>(n_max))) + 1;
    std::vector<double> f = rng.dirichlet(static_cast<std::size_t>(d.n_steps));
    double sum = 0.0;
    for (auto& v : f) {
        v = std::max(v, 0.05);
        sum += v;
    }
    for (auto& v : f) v /= sum;
    d.fractions = f;
    d.increments = decompose(total, f);
    return d;
}

BulletTimeExpansion bullet_time_expand(
    int source_len, int m, const OrbitMotion& step_start,
    const OrbitMotion& step_end, const Pose& base,
    const std::vector<OrbitMotion>& tail_motions) {
    if (m < 1) throw std::invalid_argument("bullet time: m must be >= 1");
    if (source_len < 2)
        throw std::invalid_argument("bullet time: need at least two frames");
    if (tail_motions.size() != static_cast<std::size_t>(source_len - 1))
        throw std::invalid_argument(
            "bullet time: tail must cover frames 2..l");

    BulletTimeExpansion out;
    out.frame_index_map.reserve(m + source_len - 1);
    out.frame_motions.reserve(m + source_len - 1);

    double d_az = step_end.azimuth - step_start.azimuth;
    double d_el = step_end.elevation - step_start.elevation;
    double d_lrs =
        std::log(step_end.radius_scale) - std::log(step_start.radius_scale);

    for (int j = 1; j <= m; ++j) {
        double s = static_cast<double>(j) / m;
        OrbitMotion mj;
        mj.azimuth = step_start.azimuth + d_az * s;
        mj.elevation = step_start.elevation + d_el * s;
        mj.radius_scale = step_start.radius_scale * std::exp(d_lrs * s);
        mj.pivot = step_start.pivot;
        out.frame_index_map.push_back(0);
        out.frame_motions.push_back(mj);
    }
    for (int f = 1; f < source_len; ++f) {
        out.frame_index_map.push_back(f);
        out.frame_motions.push_back(tail_motions[static_cast<std::size_t>(f) - 1]);
    }
    out.trajectory.poses.reserve(out.frame_motions.size());
    for (const auto& mo : out.frame_motions)
        out.trajectory.poses.push_back(relative_pose(base, mo));
    return out;
}

}  // namespace devis
