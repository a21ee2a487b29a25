#include "veldrift/measurement.hpp"

#include <cmath>
#include <string>

#include "veldrift/errors.hpp"

namespace veldrift::measurement {

namespace {

// Observer internal state carried by each basis vector: S, S, S1, S2.
constexpr std::array<int, 4> kObserverLabel{0, 0, 1, 2};

void require_stage(const MeasurementState& s, Stage expected, const char* op) {
    if (s.stage() != expected) {
        throw StageError(std::string(op) + ": expected stage " + std::string(to_string(expected)) +
                         ", got " + std::string(to_string(s.stage())));
    }
}

Eigen::Matrix4cd relabel_unitary() {
    // Permutation swapping the {f1S, f2S} block with {f1S1, f2S2}.
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(2, 0) = 1.0;
    u(3, 1) = 1.0;
    u(0, 2) = 1.0;
    u(1, 3) = 1.0;
    return u;
}

}  // namespace

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::Initial: return "Initial";
        case Stage::Entangled: return "Entangled";
        case Stage::Decohered: return "Decohered";
        case Stage::Collapsed: return "Collapsed";
    }
    return "?";
}

MeasurementState MeasurementState::from_density(const DensityMatrix& rho, Stage stage,
                                                std::optional<Branch> collapsed) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw InvalidInput("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) > kTraceTolerance) {
        throw InvalidInput("density matrix trace differs from 1");
    }
    MeasurementState state(rho, stage, collapsed);
    if (state.min_eigenvalue() < kEigenvalueFloor) {
        throw InvalidInput("density matrix is not positive semidefinite");
    }
    return state;
}

double MeasurementState::trace() const { return rho_.trace().real(); }

double MeasurementState::purity() const { return (rho_ * rho_).trace().real(); }

double MeasurementState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

MeasurementState initial_state(double weight_f1, double weight_f2) {
    if (!(weight_f1 >= 0.0 && weight_f2 >= 0.0) ||
        std::abs(weight_f1 + weight_f2 - 1.0) > kTraceTolerance) {
        throw InvalidInput("initial_state: weights must be non-negative and sum to 1");
    }
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = std::sqrt(weight_f1);
    psi(1) = std::sqrt(weight_f2);
    return MeasurementState::from_density(psi * psi.adjoint(), Stage::Initial);
}

MeasurementState entangle(const MeasurementState& s) {
    require_stage(s, Stage::Initial, "entangle");
    static const Eigen::Matrix4cd u = relabel_unitary();
    return MeasurementState::from_density(u * s.rho() * u.adjoint(), Stage::Entangled);
}

DensityMatrix dephase_observer(const DensityMatrix& rho) {
    DensityMatrix out = rho;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (kObserverLabel[i] != kObserverLabel[j]) out(i, j) = 0.0;
        }
    }
    return out;
}

MeasurementState decohere(const MeasurementState& s) {
    require_stage(s, Stage::Entangled, "decohere");
    return MeasurementState::from_density(dephase_observer(s.rho()), Stage::Decohered);
}

CollapseResult collapse_sample(const MeasurementState& s, Substream& rng) {
    require_stage(s, Stage::Decohered, "collapse_sample");
    const double u = rng.uniform();
    double cumulative = 0.0;
    int chosen = 3;
    for (int i = 0; i < 4; ++i) {
        cumulative += s.rho()(i, i).real();
        if (u < cumulative) {
            chosen = i;
            break;
        }
    }
    // Rounding can leave cumulative slightly below 1; never land on an empty branch.
    while (chosen > 0 && s.rho()(chosen, chosen).real() <= 0.0) --chosen;

    DensityMatrix pure = DensityMatrix::Zero();
    pure(chosen, chosen) = 1.0;
    const auto branch = static_cast<Branch>(chosen);
    return {MeasurementState::from_density(pure, Stage::Collapsed, branch), branch};
}

}  // namespace veldrift::measurement
