#pragma once

// Rank-1 projective measurements on one subsystem, the conditional
// ensembles they induce, and the search for the measurement minimizing the
// average conditional entropy of the other side.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qdk/states.hpp"

namespace qdk {

/// Search settings shared by every optimizer in the library.
struct OptimizerConfig {
    /// Qubit measurement seeding grid over theta in [0, pi] and phi in [0, 2 pi).
    int grid_theta = 12;
    int grid_phi = 24;
    /// Best grid points refined with the simplex.
    int refine_seeds = 4;
    /// Random starts for the relative-entropy searches and for measurements
    /// on subsystems larger than a qubit.
    int restarts = 30;
    double tolerance = 1e-8;
    /// Simplex iterations per start (scaled by parameter count / 2 above 2 parameters).
    int max_iterations = 200;
    /// L-BFGS iterations per start for the separable-state search.
    int max_gradient_iterations = 1000;
    /// Product terms in the separable ansatz; 0 means (dimA dimB)^2.
    int separable_terms = 0;
    std::uint64_t seed = 20140601;

    /// Throws ValidationError unless every field is positive.
    void validate() const;
};

/// Orthonormal basis {|u_n>} of the measured subsystem; projectors |u_n><u_n|.
class ProjectiveMeasurement {
public:
    /// Columns of `basis` must be orthonormal within 1e-10.
    ProjectiveMeasurement(const ComplexMatrix& basis, std::vector<double> parameters);

    std::size_t dim() const { return vectors_.size(); }
    const std::vector<std::vector<Complex>>& vectors() const { return vectors_; }
    std::vector<ComplexMatrix> projectors() const;
    /// Angles this measurement was built from ((theta, phi) for a qubit).
    const std::vector<double>& parameters() const { return params_; }

private:
    std::vector<std::vector<Complex>> vectors_;
    std::vector<double> params_;
};

/// Number of real parameters in the Givens parametrization of a d-outcome
/// measurement: one (theta, phi) pair per index pair i < j.
std::size_t measurement_parameter_count(std::size_t dim);

/// Product of complex Givens rotations G_01 G_02 ... G_{d-2,d-1}, each
/// [[cos(t/2), -e^{-i p} sin(t/2)], [e^{i p} sin(t/2), cos(t/2)]].
ComplexMatrix givens_unitary(std::size_t dim, std::span<const double> params);

/// Basis cos(t/2)|0> + e^{i p} sin(t/2)|1> and its orthogonal complement.
ProjectiveMeasurement measurement_from_angles(double theta, double phi);

ProjectiveMeasurement measurement_from_parameters(std::size_t dim, std::span<const double> params);

/// Computational basis of dimension d.
ProjectiveMeasurement computational_measurement(std::size_t dim);

struct ConditionalOutcome {
    double probability = 0.0;
    /// Empty when probability < 1e-12.
    std::optional<DensityMatrix> state;
};

struct ConditionalEnsemble {
    Subsystem measured = Subsystem::B;
    std::vector<ConditionalOutcome> outcomes;
};

inline constexpr double kNullOutcome = 1e-12;

/// p_n = tr[(I (x) P_n) rho], conditional states of the unmeasured side.
ConditionalEnsemble condition_on(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                 Subsystem measured = Subsystem::B);

inline ConditionalEnsemble condition_on_B(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    return condition_on(rho, m, Subsystem::B);
}

/// sum_n p_n S(rho_n), skipping null outcomes.
double avg_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                               Subsystem measured = Subsystem::B);

struct MeasuredConditional {
    double value = 0.0;
    ProjectiveMeasurement argmin;
    Subsystem measured = Subsystem::B;
    bool converged = false;
};

/// Minimum of avg_conditional_entropy over rank-1 projective measurements
/// on `measured`. Qubits: grid seeding then simplex refinement of the best
/// seeds. Larger subsystems: simplex from the computational basis plus
/// cfg.restarts random starts. Ties (1e-12) go to the lexicographically
/// smallest angle tuple.
MeasuredConditional measured_conditional_entropy(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                                 Subsystem measured = Subsystem::B);

/// Dephasing sum_n (I (x) P_n) rho (I (x) P_n).
DensityMatrix pinch(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                    Subsystem measured = Subsystem::B);

/// Frobenius distance between rho and its dephasing by m.
double pinch_distance(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                      Subsystem measured = Subsystem::B);

inline DensityMatrix pinch_B(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
    return pinch(rho, m, Subsystem::B);
}

struct MeasurementSearch {
    double value = 0.0;
    ProjectiveMeasurement argmin;
    bool converged = false;
};

/// Generic minimization of `objective` over measurements of dimension
/// `dim`, with the seeding strategy of measured_conditional_entropy.
MeasurementSearch minimize_over_measurements(
    std::size_t dim, const std::function<double(const ProjectiveMeasurement&)>& objective,
    const OptimizerConfig& cfg);

}  // namespace qdk
