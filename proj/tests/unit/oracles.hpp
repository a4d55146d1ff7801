// Independent reference calculations shared by the unit tests. Nothing here
// reuses the library's integrator.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

namespace oracle {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

/// Final |3⟩ population of the constant-gap linear-θ passage, by matrix
/// exponential in the frame co-rotating with θ: ψ(T) = R(π/2) exp(-iKT) |1⟩.
inline double linear_theta_p3(double delta, double omega0, double theta_dot) {
    Matrix3c k = Matrix3c::Zero();
    k(1, 1) = delta;
    k(1, 2) = k(2, 1) = 0.5 * omega0;
    k(0, 2) = Complex(0.0, -theta_dot);
    k(2, 0) = Complex(0.0, theta_dot);
    const double t = std::numbers::pi / (2.0 * theta_dot);
    const Matrix3c u = (Complex(0.0, -t) * k).exp();
    const Vector3c psi = u.col(0);
    // R(π/2) maps the rotating-frame component 0 onto |3⟩ with a sign flip.
    return std::norm(psi(0));
}

/// D[L]ρ = LρL† - ½{L†L, ρ} for an arbitrary jump operator.
inline Matrix3c dissipator(const Matrix3c& l, const Matrix3c& rho) {
    const Matrix3c ldl = l.adjoint() * l;
    return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

inline Matrix3c jump(int a, int b) {
    Matrix3c m = Matrix3c::Zero();
    m(a, b) = 1.0;
    return m;
}

/// Full Lindblad generator built from the textbook form.
inline Matrix3c lindblad(const Matrix3c& rho, const Matrix3c& h, double g21, double g23, double dephasing) {
    Matrix3c out = Complex(0.0, -1.0) * (h * rho - rho * h);
    out += dissipator(std::sqrt(g21) * jump(0, 1), rho);
    out += dissipator(std::sqrt(g23) * jump(2, 1), rho);
    Matrix3c d = Matrix3c::Zero();
    d(0, 0) = -1.0;
    d(1, 1) = 1.0;
    d(2, 2) = -1.0;
    out += dissipator(std::sqrt(dephasing) * d, rho);
    return out;
}

/// Area of one Gaussian of unit peak truncated at ±5σ.
inline double truncated_gaussian_area() { return std::sqrt(2.0 * std::numbers::pi) * std::erf(5.0 / std::numbers::sqrt2); }

inline Matrix3c random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix3c a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = Complex(n(rng), n(rng));
    Matrix3c rho = a * a.adjoint();
    return rho / rho.trace();
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("holeburn_test_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace oracle
