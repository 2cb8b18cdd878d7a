#include "qdk/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/optimize.hpp"
#include "qdk/rng.hpp"

namespace qdk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTie = 1e-12;

double wrap_angle(double x) {
    x = std::fmod(x, kTwoPi);
    if (x < 0.0) x += kTwoPi;
    return x >= kTwoPi ? 0.0 : x;
}

// <u| block |u> contraction: the unnormalized conditional operator of the
// unmeasured side after outcome u on the measured side.
ComplexMatrix conditional_block(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                std::span<const Complex> u, Subsystem measured) {
    if (measured == Subsystem::B) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t a = 0; a < dim_a; ++a)
            for (std::size_t a2 = 0; a2 < dim_a; ++a2) {
                Complex s = 0.0;
                for (std::size_t b = 0; b < dim_b; ++b) {
                    Complex row = 0.0;
                    for (std::size_t b2 = 0; b2 < dim_b; ++b2) row += rho(a * dim_b + b, a2 * dim_b + b2) * u[b2];
                    s += std::conj(u[b]) * row;
                }
                out(a, a2) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t b = 0; b < dim_b; ++b)
        for (std::size_t b2 = 0; b2 < dim_b; ++b2) {
            Complex s = 0.0;
            for (std::size_t a = 0; a < dim_a; ++a) {
                Complex row = 0.0;
                for (std::size_t a2 = 0; a2 < dim_a; ++a2) row += rho(a * dim_b + b, a2 * dim_b + b2) * u[a2];
                s += std::conj(u[a]) * row;
            }
            out(b, b2) = s;
        }
    return out;
}

double normalized_entropy(const ComplexMatrix& block, double p) {
    if (block.rows() == 1) return 0.0;
    if (block.rows() == 2) {
        const double a = block(0, 0).real() / p;
        const double d = block(1, 1).real() / p;
        const double b = std::abs(0.5 * (block(0, 1) + std::conj(block(1, 0)))) / p;
        const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
        const double mid = 0.5 * (a + d);
        const double values[2] = {mid - half_gap, mid + half_gap};
        return spectrum_entropy(values);
    }
    ComplexMatrix m = block.hermitian_part();
    m *= 1.0 / p;
    return spectrum_entropy(hermitian_eig(m).values);
}

void require_measurable(const DensityMatrix& rho, const ProjectiveMeasurement& m, Subsystem measured) {
    if (m.dim() != rho.dim_of(measured))
        throw DimensionError("measurement dimension " + std::to_string(m.dim()) +
                             " does not match subsystem " + to_string(measured) + " of dimension " +
                             std::to_string(rho.dim_of(measured)));
}

// Qubit angles (theta, phi) describing the first basis vector, theta in
// [0, pi], phi in [0, 2 pi); phi is 0 at the poles.
std::vector<double> canonical_qubit_angles(std::span<const Complex> u0) {
    const double c = std::abs(u0[0]);
    const double s = std::abs(u0[1]);
    const double theta = 2.0 * std::atan2(s, c);
    double phi = 0.0;
    if (c > 1e-15 && s > 1e-15) phi = wrap_angle(std::arg(u0[1]) - std::arg(u0[0]));
    return {theta, phi};
}

// (theta, phi) and (pi - theta, phi + pi) label the same basis with its two
// vectors swapped; report the one with theta <= pi/2.
std::vector<double> unordered_qubit_label(std::vector<double> x) {
    if (x[0] > 0.5 * std::numbers::pi + 1e-15) x = {std::numbers::pi - x[0], wrap_angle(x[1] + std::numbers::pi)};
    if (x[0] < 1e-15) x[1] = 0.0;
    return x;
}

}  // namespace

void OptimizerConfig::validate() const {
    if (grid_theta < 1 || grid_phi < 1 || refine_seeds < 1 || restarts < 1 || !(tolerance > 0.0) ||
        max_iterations < 1 || max_gradient_iterations < 1 || separable_terms < 0)
        throw ValidationError("optimizer configuration values must be positive");
}

ProjectiveMeasurement::ProjectiveMeasurement(const ComplexMatrix& basis, std::vector<double> parameters)
    : params_(std::move(parameters)) {
    if (!basis.is_square() || basis.rows() == 0) throw DimensionError("measurement basis must be square");
    const std::size_t d = basis.rows();
    for (std::size_t c = 0; c < d; ++c) vectors_.push_back(basis.column(c));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Complex ip = 0.0;
            for (std::size_t k = 0; k < d; ++k) ip += std::conj(vectors_[i][k]) * vectors_[j][k];
            if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-10)
                throw ValidationError("measurement basis is not orthonormal");
        }
}

std::vector<ComplexMatrix> ProjectiveMeasurement::projectors() const {
    std::vector<ComplexMatrix> out;
    for (const auto& v : vectors_) out.push_back(ComplexMatrix::outer(v));
    return out;
}

std::size_t measurement_parameter_count(std::size_t dim) { return dim * (dim - 1); }

ComplexMatrix givens_unitary(std::size_t dim, std::span<const double> params) {
    if (params.size() != measurement_parameter_count(dim))
        throw DimensionError("expected " + std::to_string(measurement_parameter_count(dim)) +
                             " rotation angles for dimension " + std::to_string(dim));
    ComplexMatrix u = ComplexMatrix::identity(dim);
    std::size_t k = 0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j, k += 2) {
            const double c = std::cos(0.5 * params[k]);
            const double s = std::sin(0.5 * params[k]);
            const Complex e = std::polar(1.0, params[k + 1]);
            // u <- u * G_ij
            for (std::size_t r = 0; r < dim; ++r) {
                const Complex ui = u(r, i);
                const Complex uj = u(r, j);
                u(r, i) = c * ui + e * s * uj;
                u(r, j) = -std::conj(e) * s * ui + c * uj;
            }
        }
    return u;
}

ProjectiveMeasurement measurement_from_angles(double theta, double phi) {
    const double raw[2] = {theta, phi};
    const auto u = givens_unitary(2, raw);
    const auto canonical = canonical_qubit_angles(u.column(0));
    return ProjectiveMeasurement(givens_unitary(2, canonical), canonical);
}

ProjectiveMeasurement measurement_from_parameters(std::size_t dim, std::span<const double> params) {
    if (dim == 2) return measurement_from_angles(params[0], params[1]);
    std::vector<double> wrapped(params.begin(), params.end());
    for (auto& x : wrapped) x = wrap_angle(x);
    return ProjectiveMeasurement(givens_unitary(dim, wrapped), wrapped);
}

ProjectiveMeasurement computational_measurement(std::size_t dim) {
    return ProjectiveMeasurement(ComplexMatrix::identity(dim),
                                 std::vector<double>(measurement_parameter_count(dim), 0.0));
}

ConditionalEnsemble condition_on(const DensityMatrix& rho, const ProjectiveMeasurement& m, Subsystem measured) {
    require_measurable(rho, m, measured);
    ConditionalEnsemble ens;
    ens.measured = measured;
    for (const auto& u : m.vectors()) {
        ComplexMatrix block = conditional_block(rho.matrix(), rho.dim_a(), rho.dim_b(), u, measured);
        ConditionalOutcome out;
        out.probability = std::max(0.0, block.trace().real());
        if (out.probability >= kNullOutcome) {
            ComplexMatrix state = block.hermitian_part();
            state *= 1.0 / state.trace().real();
            out.state = validate_density(state, state.rows(), 1);
        }
        ens.outcomes.push_back(std::move(out));
    }
    return ens;
}

double avg_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m, Subsystem measured) {
    require_measurable(rho, m, measured);
    double total = 0.0;
    for (const auto& u : m.vectors()) {
        const ComplexMatrix block = conditional_block(rho.matrix(), rho.dim_a(), rho.dim_b(), u, measured);
        const double p = block.trace().real();
        if (p < kNullOutcome) continue;
        total += p * normalized_entropy(block, p);
    }
    return total;
}

namespace {

ComplexMatrix pinched_matrix(const DensityMatrix& rho, const ProjectiveMeasurement& m, Subsystem measured) {
    require_measurable(rho, m, measured);
    const std::size_t n = rho.dim();
    const std::size_t other = rho.dim_of(other_side(measured));
    ComplexMatrix out(n, n);
    for (const auto& proj : m.projectors()) {
        const ComplexMatrix lifted = measured == Subsystem::B ? kron(ComplexMatrix::identity(other), proj)
                                                               : kron(proj, ComplexMatrix::identity(other));
        out += lifted * rho.matrix() * lifted;
    }
    return out;
}

}  // namespace

DensityMatrix pinch(const DensityMatrix& rho, const ProjectiveMeasurement& m, Subsystem measured) {
    return validate_density(pinched_matrix(rho, m, measured).hermitian_part(), rho.dim_a(), rho.dim_b());
}

double pinch_distance(const DensityMatrix& rho, const ProjectiveMeasurement& m, Subsystem measured) {
    return frobenius_distance(pinched_matrix(rho, m, measured), rho.matrix());
}

MeasurementSearch minimize_over_measurements(std::size_t dim,
                                             const std::function<double(const ProjectiveMeasurement&)>& objective,
                                             const OptimizerConfig& cfg) {
    cfg.validate();
    if (dim == 1) {
        auto m = computational_measurement(1);
        const double v = objective(m);
        return {v, std::move(m), true};
    }
    const std::size_t nparams = measurement_parameter_count(dim);
    const auto f = [&](std::span<const double> x) { return objective(measurement_from_parameters(dim, x)); };

    std::vector<LocalMinimum> seeds;
    if (dim == 2) {
        for (int i = 0; i < cfg.grid_theta; ++i) {
            const double theta = cfg.grid_theta == 1 ? 0.0 : std::numbers::pi * i / (cfg.grid_theta - 1);
            for (int j = 0; j < cfg.grid_phi; ++j) {
                const double phi = kTwoPi * j / cfg.grid_phi;
                const std::vector<double> x{theta, phi};
                seeds.push_back({x, f(x), 0, false});
            }
        }
        // Everything within kTie of the best grid value counts as tied and is
        // ordered by angles, so flat objectives seed from the poles.
        double lowest = seeds.front().value;
        for (const auto& sd : seeds) lowest = std::min(lowest, sd.value);
        const auto key = [&](const LocalMinimum& m) { return m.value <= lowest + kTie ? lowest : m.value; };
        std::stable_sort(seeds.begin(), seeds.end(), [&](const LocalMinimum& a, const LocalMinimum& b) {
            if (key(a) != key(b)) return key(a) < key(b);
            return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
        });
        seeds.resize(std::min<std::size_t>(seeds.size(), static_cast<std::size_t>(cfg.refine_seeds)));
    } else {
        std::vector<double> zero(nparams, 0.0);
        seeds.push_back({zero, f(zero), 0, false});
        Rng rng(cfg.seed);
        for (int r = 0; r < cfg.restarts; ++r) {
            std::vector<double> x(nparams);
            for (auto& v : x) v = rng.uniform(0.0, kTwoPi);
            seeds.push_back({x, f(x), 0, false});
        }
    }

    SimplexOptions opts;
    opts.tolerance = cfg.tolerance;
    opts.max_iterations = cfg.max_iterations * static_cast<int>(std::max<std::size_t>(1, nparams / 2));
    opts.initial_step = dim == 2 ? std::numbers::pi / std::max(2, cfg.grid_theta - 1) : 0.5;

    std::optional<LocalMinimum> best;
    for (const auto& seed : seeds) {
        LocalMinimum local = nelder_mead(f, seed.x, opts);
        const auto label = [&](std::span<const double> x) {
            auto p = measurement_from_parameters(dim, x).parameters();
            return dim == 2 ? unordered_qubit_label(std::move(p)) : p;
        };
        local.x = label(local.x);
        LocalMinimum start{label(seed.x), seed.value, local.iterations, local.converged};
        // the refinement only replaces its own seed when it found something lower
        if (better_point(start, local, kTie)) local = std::move(start);
        if (!best || better_point(local, *best, kTie)) best = std::move(local);
    }
    return {best->value, measurement_from_parameters(dim, best->x), best->converged};
}

MeasuredConditional measured_conditional_entropy(const DensityMatrix& rho, const OptimizerConfig& cfg,
                                                 Subsystem measured) {
    const auto search = minimize_over_measurements(
        rho.dim_of(measured),
        [&](const ProjectiveMeasurement& m) { return avg_conditional_entropy(rho, m, measured); }, cfg);
    return {search.value, search.argmin, measured, search.converged};
}

}  // namespace qdk
