#pragma once

// Relative-entropy distances from a state to the product, separable and
// classically-correlated sets.

#include <span>
#include <vector>

#include "qdk/measurement.hpp"

namespace qdk {

/// sum_k w_k |a_k><a_k| (x) |b_k><b_k| with unit vectors a_k, b_k.
struct SeparableAnsatz {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::vector<double> weights;
    std::vector<std::vector<Complex>> states_a;
    std::vector<std::vector<Complex>> states_b;

    std::size_t terms() const { return weights.size(); }
    DensityMatrix realize() const;
};

/// sum_ij p_ij |a_i><a_i| (x) |b_j><b_j| for orthonormal bases {a_i}, {b_j}
/// (columns of givens_unitary(dim, angles)). weights is row-major in (i, j).
struct ClassicalAnsatz {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::vector<double> angles_a;
    std::vector<double> angles_b;
    std::vector<double> weights;

    ComplexMatrix basis_a() const;
    ComplexMatrix basis_b() const;
    DensityMatrix realize() const;
    /// The same state written as a separable ansatz with dim_a * dim_b terms.
    SeparableAnsatz as_separable() const;
};

struct EntanglementResult {
    double value = 0.0;
    SeparableAnsatz closest;
    bool converged = false;
};

struct ClassicalDistanceResult {
    double value = 0.0;
    ClassicalAnsatz closest;
    bool converged = false;
};

/// Regularization inside the separable objective: sigma -> (1 - eps) sigma + eps I / d.
inline constexpr double kSupportRegularization = 1e-9;

/// Separable ansatz with Carathéodory-sufficient K = (dA dB)^2 terms unless
/// cfg.separable_terms overrides it.
std::size_t separable_terms(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// Regularized objective S(rho || sigma_eps) of a separable ansatz.
double separable_objective(const DensityMatrix& rho, const SeparableAnsatz& sigma);

/// The same objective in the optimizer's coordinates, with its analytic
/// gradient written to `grad` when non-empty. Per term: a weight root x_k
/// (w_k = x_k^2 / sum x^2), then re/im of the unnormalized vector on A, then
/// on B. x.size() must be terms * (1 + 2 dimA + 2 dimB).
double separable_objective(const DensityMatrix& rho, std::size_t terms, std::span<const double> x,
                           std::span<double> grad);

/// Coordinates of an ansatz in the layout above.
std::vector<double> separable_coordinates(const SeparableAnsatz& sigma);

/// min over classical states of S(rho || sigma). For fixed local bases the
/// optimal weights are the diagonal of rho in the product basis, leaving
/// S(dephased rho) - S(rho) to be minimized over the bases (simplex,
/// computational basis first then cfg.restarts - 1 random starts).
ClassicalDistanceResult rel_ent_of_discord(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// min over separable states of S(rho || sigma). Multi-start L-BFGS on the
/// separable ansatz; start 0 is the closest classical state (an upper
/// bound, since classical states are separable), the others are random.
/// Later starts replace the incumbent only when better by more than
/// cfg.tolerance.
EntanglementResult rel_ent_of_entanglement(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// rho_A (x) rho_B; S(rho || rho_A (x) rho_B) = I_Q.
DensityMatrix closest_product_state(const DensityMatrix& rho);

}  // namespace qdk
