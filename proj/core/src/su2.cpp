#include "base_pulse/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "base_pulse/error.hpp"

namespace base_pulse {

double Vec3::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

double BlochVector::norm() const noexcept { return std::sqrt(mx * mx + my * my + mz * mz); }

double Spinor::norm() const noexcept { return std::sqrt(std::norm(up) + std::norm(down)); }

BlochVector to_bloch(const Spinor& s) noexcept {
    // <sigma> for |psi> = (up, down): conj(up)*down = (mx + i*my) / 2.
    const Complex coherence = std::conj(s.up) * s.down;
    return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(s.up) - std::norm(s.down)};
}

Spinor spinor_from_bloch(const BlochVector& v) {
    const double n = v.norm();
    if (std::abs(n - 1.0) > 1e-9) {
        throw InvalidArgument("spinor_from_bloch: Bloch vector must have unit norm");
    }
    const double polar = std::acos(std::clamp(v.mz / n, -1.0, 1.0));
    const double azimuth = std::atan2(v.my, v.mx);
    return {Complex(std::cos(polar / 2.0), 0.0), std::polar(std::sin(polar / 2.0), azimuth)};
}

Su2Rotation Su2Rotation::from_quaternion(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("Su2Rotation: quaternion must be finite and nonzero");
    }
    return {w / n, x / n, y / n, z / n};
}

double Su2Rotation::norm() const noexcept {
    return std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_);
}

Su2Rotation rotation_from_axis_angle(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (!(std::abs(n - 1.0) <= 1e-9)) {
        throw InvalidArgument("rotation_from_axis_angle: axis must be a unit vector");
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0) / n;
    return Su2Rotation::from_quaternion(c, s * axis.x, s * axis.y, s * axis.z);
}

Su2Rotation rotation_x(double angle) {
    return Su2Rotation::from_quaternion(std::cos(angle / 2.0), std::sin(angle / 2.0), 0.0, 0.0);
}

Su2Rotation rotation_y(double angle) {
    return Su2Rotation::from_quaternion(std::cos(angle / 2.0), 0.0, std::sin(angle / 2.0), 0.0);
}

Su2Rotation rotation_z(double angle) {
    return Su2Rotation::from_quaternion(std::cos(angle / 2.0), 0.0, 0.0, std::sin(angle / 2.0));
}

Su2Rotation propagator_const(double omega, double amplitude, double phase, double duration) {
    if (!(amplitude >= 0.0)) {
        throw InvalidArgument("propagator_const: amplitude must be non-negative");
    }
    if (!(duration >= 0.0)) {
        throw InvalidArgument("propagator_const: duration must be non-negative");
    }
    const double field = std::hypot(omega, amplitude);
    if (field == 0.0 || duration == 0.0) {
        return Su2Rotation::identity();
    }
    const double half = 0.5 * field * duration;
    const double s = std::sin(half) / field;
    return Su2Rotation::from_quaternion(std::cos(half), s * amplitude * std::cos(phase),
                                        s * amplitude * std::sin(phase), s * omega);
}

Su2Rotation compose(const Su2Rotation& second, const Su2Rotation& first) noexcept {
    // Hamilton product second * first.
    const Su2Rotation& p = second;
    const Su2Rotation& q = first;
    const double w = p.w_ * q.w_ - p.x_ * q.x_ - p.y_ * q.y_ - p.z_ * q.z_;
    const double x = p.w_ * q.x_ + p.x_ * q.w_ + p.y_ * q.z_ - p.z_ * q.y_;
    const double y = p.w_ * q.y_ - p.x_ * q.z_ + p.y_ * q.w_ + p.z_ * q.x_;
    const double z = p.w_ * q.z_ + p.x_ * q.y_ - p.y_ * q.x_ + p.z_ * q.w_;
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    return {w / n, x / n, y / n, z / n};
}

BlochVector apply_to_bloch(const Su2Rotation& r, const BlochVector& v) noexcept {
    const double w = r.w(), x = r.x(), y = r.y(), z = r.z();
    // Rotation matrix of the unit quaternion.
    const double r00 = 1.0 - 2.0 * (y * y + z * z);
    const double r01 = 2.0 * (x * y - w * z);
    const double r02 = 2.0 * (x * z + w * y);
    const double r10 = 2.0 * (x * y + w * z);
    const double r11 = 1.0 - 2.0 * (x * x + z * z);
    const double r12 = 2.0 * (y * z - w * x);
    const double r20 = 2.0 * (x * z - w * y);
    const double r21 = 2.0 * (y * z + w * x);
    const double r22 = 1.0 - 2.0 * (x * x + y * y);
    return {r00 * v.mx + r01 * v.my + r02 * v.mz, r10 * v.mx + r11 * v.my + r12 * v.mz,
            r20 * v.mx + r21 * v.my + r22 * v.mz};
}

Spinor apply(const Su2Rotation& r, const Spinor& s) noexcept {
    const Complex a = r.a();
    const Complex b = r.b();
    return {a * s.up + b * s.down, -std::conj(b) * s.up + std::conj(a) * s.down};
}

EulerZxz euler_zxz(const Su2Rotation& r) noexcept {
    // Rz(alpha) Rx(gamma) Rz(beta) has quaternion
    //   w = cos(g/2) cos((a+b)/2),  z = cos(g/2) sin((a+b)/2),
    //   x = sin(g/2) cos((a-b)/2),  y = sin(g/2) sin((a-b)/2).
    constexpr double kDegenerate = 1e-12;
    const double cos_half = std::hypot(r.w(), r.z());
    const double sin_half = std::hypot(r.x(), r.y());

    EulerZxz e;
    e.gamma = 2.0 * std::atan2(sin_half, cos_half);
    if (sin_half < kDegenerate) {
        e.alpha = 2.0 * std::atan2(r.z(), r.w());
        e.beta = 0.0;
    } else if (cos_half < kDegenerate) {
        e.alpha = 2.0 * std::atan2(r.y(), r.x());
        e.beta = 0.0;
    } else {
        const double sum = std::atan2(r.z(), r.w());
        const double diff = std::atan2(r.y(), r.x());
        e.alpha = sum + diff;
        e.beta = sum - diff;
    }
    return e;
}

Su2Rotation from_euler_zxz(const EulerZxz& e) {
    return compose(rotation_z(e.alpha), compose(rotation_x(e.gamma), rotation_z(e.beta)));
}

double rotation_distance(const Su2Rotation& r1, const Su2Rotation& r2) noexcept {
    auto chord = [&](double sign) {
        const double dw = r1.w() - sign * r2.w();
        const double dx = r1.x() - sign * r2.x();
        const double dy = r1.y() - sign * r2.y();
        const double dz = r1.z() - sign * r2.z();
        return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
    };
    const double d = std::min(chord(1.0), chord(-1.0)) / std::numbers::sqrt2;
    return std::clamp(d, 0.0, 1.0);
}

}  // namespace base_pulse
