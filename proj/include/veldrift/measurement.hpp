#pragma once

#include <array>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "veldrift/random.hpp"

namespace veldrift::measurement {

/// Basis of the joint (source CM) x (observer internal) space, fixed order.
enum class Branch : int { F1S = 0, F2S = 1, F1S1 = 2, F2S2 = 3 };

inline constexpr std::array<std::string_view, 4> kBasisLabels{"f1S", "f2S", "f1S1", "f2S2"};

enum class Stage { Initial, Entangled, Decohered, Collapsed };

std::string_view to_string(Stage stage);

using DensityMatrix = Eigen::Matrix4cd;

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

/// A validated density matrix tagged with its pipeline stage. Immutable:
/// every operation below returns a new state.
class MeasurementState {
public:
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    static MeasurementState from_density(const DensityMatrix& rho, Stage stage,
                                         std::optional<Branch> collapsed = std::nullopt);

    const DensityMatrix& rho() const { return rho_; }
    Stage stage() const { return stage_; }
    std::optional<Branch> collapsed_branch() const { return collapsed_; }

    double trace() const;
    double purity() const;  ///< tr(rho^2)
    double min_eigenvalue() const;

private:
    MeasurementState(const DensityMatrix& rho, Stage stage, std::optional<Branch> collapsed)
        : rho_(rho), stage_(stage), collapsed_(collapsed) {}

    DensityMatrix rho_;
    Stage stage_;
    std::optional<Branch> collapsed_;
};

/// Pure superposition sqrt(w1)|f1 S> + sqrt(w2)|f2 S>.
MeasurementState initial_state(double weight_f1, double weight_f2);

/// Photon emission by the source and absorption by the observer, composed
/// into one unitary relabelling |f1 S> -> |f1 S1>, |f2 S> -> |f2 S2>.
MeasurementState entangle(const MeasurementState& s);

/// Instantaneous loss of coherence between macroscopically distinct
/// observer states S, S1, S2.
MeasurementState decohere(const MeasurementState& s);

struct CollapseResult {
    MeasurementState state;
    Branch branch;
};

/// Postselect one basis state with probability rho[i][i].
CollapseResult collapse_sample(const MeasurementState& s, Substream& rng);

/// Projective dephasing onto observer-label blocks {f1S, f2S}, {f1S1},
/// {f2S2}. Stage-agnostic; decohere() is this plus stage bookkeeping.
DensityMatrix dephase_observer(const DensityMatrix& rho);

}  // namespace veldrift::measurement
