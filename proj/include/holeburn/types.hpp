// types.hpp — core value types for the three-level Λ model.
//
// Units: σ (the pulse width) is the time unit, every frequency and rate is
// expressed in σ⁻¹, and ħ = 1. Level indices 0, 1, 2 stand for |1⟩, |2⟩, |3⟩.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace holeburn {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

/// Populations of |1⟩, |2⟩, |3⟩.
using Populations = std::array<double, 3>;

inline double max_abs_diff(const Populations& a, const Populations& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < 3; ++i) r = std::max(r, std::abs(a[i] - b[i]));
    return r;
}

/// Largest entrywise deviation |M - M†|.
inline double hermiticity_error(const Matrix3c& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// 3×3 density operator. The checked constructor enforces Hermiticity and
/// unit trace to 1e-9 and a minimum eigenvalue of -1e-7.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-9;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kPositivityTol = -1e-7;

    DensityMatrix() : rho_(Matrix3c::Zero()) { rho_(0, 0) = 1.0; }

    explicit DensityMatrix(const Matrix3c& rho) : rho_(rho) {
        if (holeburn::hermiticity_error(rho_) > kHermitianTol)
            throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(rho_.trace() - Complex(1.0)) > kTraceTol)
            throw std::invalid_argument("density matrix trace differs from 1");
        if (min_eigenvalue() < kPositivityTol)
            throw std::invalid_argument("density matrix has a negative eigenvalue");
    }

    /// Wraps an integrator output without re-validating it.
    static DensityMatrix unchecked(const Matrix3c& rho) {
        DensityMatrix d;
        d.rho_ = rho;
        return d;
    }

    /// |level⟩⟨level| for level in {0, 1, 2}.
    static DensityMatrix ground(int level = 0) {
        if (level < 0 || level > 2) throw std::out_of_range("level index must be 0, 1 or 2");
        Matrix3c m = Matrix3c::Zero();
        m(level, level) = 1.0;
        return unchecked(m);
    }

    /// |ψ⟩⟨ψ| for a normalised ψ.
    static DensityMatrix from_state(const Vector3c& psi) {
        const double n = psi.squaredNorm();
        if (std::abs(n - 1.0) > kTraceTol) throw std::invalid_argument("state vector is not normalised");
        return unchecked(psi * psi.adjoint());
    }

    const Matrix3c& matrix() const { return rho_; }

    Populations populations() const {
        return {rho_(0, 0).real(), rho_(1, 1).real(), rho_(2, 2).real()};
    }

    double trace_error() const { return std::abs(rho_.trace() - Complex(1.0)); }
    double hermiticity_error() const { return holeburn::hermiticity_error(rho_); }
    double purity() const { return (rho_ * rho_).trace().real(); }

    double min_eigenvalue() const {
        const Matrix3c herm = 0.5 * (rho_ + rho_.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix3c> es(herm, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

private:
    Matrix3c rho_;
};

/// Per-ion parameters. Δ is the single-photon detuning of the |1⟩↔|2⟩ drive.
struct SystemParams {
    double delta = 0.0;
    double omega13 = 0.0;  // ground-state splitting, used only with cross coupling
    double gamma21 = 0.0;
    double gamma23 = 0.0;
    double dephasing = 0.0;  // Γ
    bool cross_coupling = false;

    bool operator==(const SystemParams&) const = default;

    bool closed() const { return gamma21 == 0.0 && gamma23 == 0.0 && dephasing == 0.0; }

    void validate() const {
        if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
        if (!(gamma21 >= 0.0)) throw std::invalid_argument("gamma21 must be nonnegative");
        if (!(gamma23 >= 0.0)) throw std::invalid_argument("gamma23 must be nonnegative");
        if (!(dephasing >= 0.0)) throw std::invalid_argument("Gamma (dephasing) must be nonnegative");
        if (!(omega13 >= 0.0)) throw std::invalid_argument("omega13 must be nonnegative");
        if (cross_coupling && !(omega13 > 0.0))
            throw std::invalid_argument("cross coupling requires omega13 > 0");
    }
};

}  // namespace holeburn
