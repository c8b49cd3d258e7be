#pragma once

// Spin-1/2 rotation algebra.
//
// Spin operators are I_a = sigma_a / 2, so exp(-i*angle*(n.I)) rotates Bloch
// vectors by `angle` about n with the right-hand rule. Rotations are stored as
// unit quaternions (w, x, y, z) with
//
//     U = w*1 - i*(x*sigma_x + y*sigma_y + z*sigma_z),
//
// and U, -U are the same physical rotation (global phase is not represented).

#include <complex>

namespace base_pulse {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] double norm() const noexcept;
};

struct BlochVector {
    double mx = 0.0;
    double my = 0.0;
    double mz = 1.0;

    [[nodiscard]] double norm() const noexcept;

    static constexpr BlochVector plus_x() noexcept { return {1.0, 0.0, 0.0}; }
    static constexpr BlochVector plus_y() noexcept { return {0.0, 1.0, 0.0}; }
    static constexpr BlochVector plus_z() noexcept { return {0.0, 0.0, 1.0}; }
};

struct Spinor {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    [[nodiscard]] double norm() const noexcept;
};

[[nodiscard]] BlochVector to_bloch(const Spinor& s) noexcept;

// One spinor (of the U(1) family) whose Bloch vector is `v`. Requires |v| = 1.
[[nodiscard]] Spinor spinor_from_bloch(const BlochVector& v);

class Su2Rotation {
public:
    constexpr Su2Rotation() noexcept = default;

    [[nodiscard]] static constexpr Su2Rotation identity() noexcept { return {}; }

    // Normalizes the input; throws InvalidArgument for a zero quaternion.
    [[nodiscard]] static Su2Rotation from_quaternion(double w, double x, double y, double z);

    [[nodiscard]] double w() const noexcept { return w_; }
    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }
    [[nodiscard]] double z() const noexcept { return z_; }

    // Matrix view [[a, b], [-conj(b), conj(a)]].
    [[nodiscard]] Complex a() const noexcept { return {w_, -z_}; }
    [[nodiscard]] Complex b() const noexcept { return {-y_, -x_}; }

    [[nodiscard]] Su2Rotation inverse() const noexcept { return {w_, -x_, -y_, -z_}; }
    [[nodiscard]] Su2Rotation operator-() const noexcept { return {-w_, -x_, -y_, -z_}; }

    [[nodiscard]] double norm() const noexcept;

private:
    constexpr Su2Rotation(double w, double x, double y, double z) noexcept
        : w_(w), x_(x), y_(y), z_(z) {}

    friend Su2Rotation compose(const Su2Rotation& second, const Su2Rotation& first) noexcept;

    double w_ = 1.0;
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;
};

// exp(-i*angle*(n.I)). Throws InvalidArgument unless |axis| = 1 within 1e-9.
[[nodiscard]] Su2Rotation rotation_from_axis_angle(const Vec3& axis, double angle);

[[nodiscard]] Su2Rotation rotation_x(double angle);
[[nodiscard]] Su2Rotation rotation_y(double angle);
[[nodiscard]] Su2Rotation rotation_z(double angle);

// Exact propagator of omega*Iz + A*cos(phase)*Ix + A*sin(phase)*Iy held for
// `duration`. Throws InvalidArgument for negative amplitude or duration.
[[nodiscard]] Su2Rotation propagator_const(double omega, double amplitude, double phase,
                                           double duration);

// U_second * U_first: `first` acts first.
[[nodiscard]] Su2Rotation compose(const Su2Rotation& second, const Su2Rotation& first) noexcept;

[[nodiscard]] BlochVector apply_to_bloch(const Su2Rotation& r, const BlochVector& v) noexcept;
[[nodiscard]] Spinor apply(const Su2Rotation& r, const Spinor& s) noexcept;

// U = exp(-i*alpha*Iz) * exp(-i*gamma*Ix) * exp(-i*beta*Iz), gamma in [0, pi].
struct EulerZxz {
    double alpha = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
};

// When sin(gamma/2) or cos(gamma/2) vanishes, beta is set to 0 and the whole
// z-angle goes into alpha.
[[nodiscard]] EulerZxz euler_zxz(const Su2Rotation& r) noexcept;
[[nodiscard]] Su2Rotation from_euler_zxz(const EulerZxz& e);

// Chord distance on the quaternion projective space:
// min(|q1 - q2|, |q1 + q2|) / sqrt(2). Lies in [0, 1]; 0 iff r1 = +-r2.
[[nodiscard]] double rotation_distance(const Su2Rotation& r1, const Su2Rotation& r2) noexcept;

}  // namespace base_pulse
