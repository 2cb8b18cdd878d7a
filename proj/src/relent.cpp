#include "qdk/relent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qdk/entropy.hpp"
#include "qdk/errors.hpp"
#include "qdk/optimize.hpp"
#include "qdk/rng.hpp"

namespace qdk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Complex> normalized(std::vector<Complex> v) {
    double n2 = 0.0;
    for (const auto& z : v) n2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& z : v) z *= inv;
    return v;
}

// Diagonal of rho in the product basis {a_i (x) b_j}.
std::vector<double> product_basis_diagonal(const ComplexMatrix& rho, const ComplexMatrix& ua,
                                           const ComplexMatrix& ub) {
    const std::size_t da = ua.rows();
    const std::size_t db = ub.rows();
    const std::size_t n = da * db;
    std::vector<double> diag(n);
    std::vector<Complex> v(n), rv(n);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            for (std::size_t x = 0; x < da; ++x)
                for (std::size_t y = 0; y < db; ++y) v[x * db + y] = ua(x, i) * ub(y, j);
            double q = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                Complex acc = 0.0;
                for (std::size_t c = 0; c < n; ++c) acc += rho(r, c) * v[c];
                q += (std::conj(v[r]) * acc).real();
            }
            diag[i * db + j] = std::max(0.0, q);
        }
    return diag;
}

// Separable ansatz in optimizer coordinates: per term one weight root x_k
// (w_k = x_k^2 / sum x^2) followed by the real and imaginary parts of the
// unnormalized vectors on A and on B.
struct SeparableCoordinates {
    std::size_t dim_a;
    std::size_t dim_b;
    std::size_t terms;

    std::size_t stride() const { return 1 + 2 * dim_a + 2 * dim_b; }
    std::size_t size() const { return terms * stride(); }

    SeparableAnsatz decode(std::span<const double> x) const {
        SeparableAnsatz s{dim_a, dim_b, {}, {}, {}};
        double total = 0.0;
        for (std::size_t k = 0; k < terms; ++k) total += x[k * stride()] * x[k * stride()];
        for (std::size_t k = 0; k < terms; ++k) {
            const double* p = x.data() + k * stride();
            s.weights.push_back(p[0] * p[0] / total);
            std::vector<Complex> a(dim_a), b(dim_b);
            for (std::size_t i = 0; i < dim_a; ++i) a[i] = {p[1 + 2 * i], p[2 + 2 * i]};
            for (std::size_t j = 0; j < dim_b; ++j) b[j] = {p[1 + 2 * dim_a + 2 * j], p[2 + 2 * dim_a + 2 * j]};
            s.states_a.push_back(normalized(std::move(a)));
            s.states_b.push_back(normalized(std::move(b)));
        }
        return s;
    }

    std::vector<double> encode(const SeparableAnsatz& s) const {
        std::vector<double> x(size());
        for (std::size_t k = 0; k < terms; ++k) {
            double* p = x.data() + k * stride();
            p[0] = std::sqrt(s.weights[k]);
            for (std::size_t i = 0; i < dim_a; ++i) {
                p[1 + 2 * i] = s.states_a[k][i].real();
                p[2 + 2 * i] = s.states_a[k][i].imag();
            }
            for (std::size_t j = 0; j < dim_b; ++j) {
                p[1 + 2 * dim_a + 2 * j] = s.states_b[k][j].real();
                p[2 + 2 * dim_a + 2 * j] = s.states_b[k][j].imag();
            }
        }
        return x;
    }
};

ComplexMatrix realize_matrix(const SeparableAnsatz& s) {
    const std::size_t n = s.dim_a * s.dim_b;
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < s.terms(); ++k) {
        const auto psi = kron(s.states_a[k], s.states_b[k]);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) += s.weights[k] * psi[r] * std::conj(psi[c]);
    }
    return m;
}

// S(rho || (1 - eps) sigma + eps I / n) and its gradient in optimizer
// coordinates.
class SeparableObjective {
public:
    SeparableObjective(const DensityMatrix& rho, SeparableCoordinates coords)
        : rho_(rho.matrix()), entropy_(von_neumann(rho)), coords_(coords) {}

    double operator()(std::span<const double> x, std::span<double> grad) const {
        const SeparableAnsatz s = coords_.decode(x);
        const std::size_t n = coords_.dim_a * coords_.dim_b;
        constexpr double eps = kSupportRegularization;

        ComplexMatrix sigma = realize_matrix(s);
        sigma *= 1.0 - eps;
        for (std::size_t i = 0; i < n; ++i) sigma(i, i) += eps / static_cast<double>(n);
        const Spectrum spec = hermitian_eig(sigma.hermitian_part());

        const ComplexMatrix& v = spec.vectors;
        const ComplexMatrix r = v.adjoint() * rho_ * v;
        std::vector<double> logs(n);
        double cross = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            logs[i] = std::log2(std::max(spec.values[i], 1e-300));
            cross += logs[i] * r(i, i).real();
        }
        const double value = -entropy_ - cross;
        if (grad.empty()) return value;

        // d/d sigma of -tr(rho log sigma_eps) is G = -(1 - eps) V (L o R) V^dagger,
        // L the divided differences of log2 on the spectrum.
        ComplexMatrix lr(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const double li = spec.values[i];
                const double lj = spec.values[j];
                double l;
                if (std::abs(li - lj) <= 1e-10 * std::max(li, lj))
                    l = 1.0 / (0.5 * (li + lj) * std::numbers::ln2);
                else
                    l = (logs[i] - logs[j]) / (li - lj);
                lr(i, j) = l * r(i, j);
            }
        ComplexMatrix g = v * lr * v.adjoint();
        g *= -(1.0 - eps);

        const std::size_t stride = coords_.stride();
        const std::size_t da = coords_.dim_a;
        const std::size_t db = coords_.dim_b;
        std::vector<double> c(s.terms());
        double mean_c = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < s.terms(); ++k) total += x[k * stride] * x[k * stride];

        for (std::size_t k = 0; k < s.terms(); ++k) {
            const auto psi = kron(s.states_a[k], s.states_b[k]);
            const auto h = g.apply(psi);
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i) e += (std::conj(psi[i]) * h[i]).real();
            c[k] = e;
            mean_c += s.weights[k] * e;

            const double* p = x.data() + k * stride;
            double na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < 2 * da; ++i) na += p[1 + i] * p[1 + i];
            for (std::size_t j = 0; j < 2 * db; ++j) nb += p[1 + 2 * da + j] * p[1 + 2 * da + j];
            na = std::sqrt(na);
            nb = std::sqrt(nb);

            double* gp = grad.data() + k * stride;
            for (std::size_t i = 0; i < da; ++i) {
                Complex ga = 0.0;
                for (std::size_t j = 0; j < db; ++j) ga += h[i * db + j] * std::conj(s.states_b[k][j]);
                const Complex d = (2.0 * s.weights[k] / na) * (ga - e * s.states_a[k][i]);
                gp[1 + 2 * i] = d.real();
                gp[2 + 2 * i] = d.imag();
            }
            for (std::size_t j = 0; j < db; ++j) {
                Complex gb = 0.0;
                for (std::size_t i = 0; i < da; ++i) gb += h[i * db + j] * std::conj(s.states_a[k][i]);
                const Complex d = (2.0 * s.weights[k] / nb) * (gb - e * s.states_b[k][j]);
                gp[1 + 2 * da + 2 * j] = d.real();
                gp[2 + 2 * da + 2 * j] = d.imag();
            }
        }
        for (std::size_t k = 0; k < s.terms(); ++k)
            grad[k * stride] = 2.0 * x[k * stride] / total * (c[k] - mean_c);
        return value;
    }

private:
    ComplexMatrix rho_;
    double entropy_;
    SeparableCoordinates coords_;
};

}  // namespace

ComplexMatrix ClassicalAnsatz::basis_a() const { return givens_unitary(dim_a, angles_a); }
ComplexMatrix ClassicalAnsatz::basis_b() const { return givens_unitary(dim_b, angles_b); }

SeparableAnsatz ClassicalAnsatz::as_separable() const {
    SeparableAnsatz s{dim_a, dim_b, {}, {}, {}};
    const auto ua = basis_a();
    const auto ub = basis_b();
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_b; ++j) {
            s.weights.push_back(weights[i * dim_b + j]);
            s.states_a.push_back(ua.column(i));
            s.states_b.push_back(ub.column(j));
        }
    return s;
}

DensityMatrix ClassicalAnsatz::realize() const { return as_separable().realize(); }

DensityMatrix SeparableAnsatz::realize() const {
    ComplexMatrix m = realize_matrix(*this);
    m *= 1.0 / m.trace().real();
    return validate_density(m.hermitian_part(), dim_a, dim_b);
}

std::size_t separable_terms(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    if (cfg.separable_terms > 0) return static_cast<std::size_t>(cfg.separable_terms);
    return rho.dim() * rho.dim();
}

double separable_objective(const DensityMatrix& rho, const SeparableAnsatz& sigma) {
    if (sigma.dim_a != rho.dim_a() || sigma.dim_b != rho.dim_b() || sigma.terms() == 0)
        throw DimensionError("separable ansatz does not match the state");
    const SeparableCoordinates coords{sigma.dim_a, sigma.dim_b, sigma.terms()};
    return SeparableObjective(rho, coords)(coords.encode(sigma), {});
}

double separable_objective(const DensityMatrix& rho, std::size_t terms, std::span<const double> x,
                           std::span<double> grad) {
    const SeparableCoordinates coords{rho.dim_a(), rho.dim_b(), terms};
    if (terms == 0 || x.size() != coords.size() || (!grad.empty() && grad.size() != x.size()))
        throw DimensionError("separable coordinates do not match the state");
    return SeparableObjective(rho, coords)(x, grad);
}

std::vector<double> separable_coordinates(const SeparableAnsatz& sigma) {
    return SeparableCoordinates{sigma.dim_a, sigma.dim_b, sigma.terms()}.encode(sigma);
}

ClassicalDistanceResult rel_ent_of_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    cfg.validate();
    const std::size_t da = rho.dim_a();
    const std::size_t db = rho.dim_b();
    const std::size_t na = measurement_parameter_count(da);
    const std::size_t nb = measurement_parameter_count(db);
    const double s_rho = von_neumann(rho);

    const auto bases = [&](std::span<const double> x) {
        return std::pair{givens_unitary(da, x.subspan(0, na)), givens_unitary(db, x.subspan(na, nb))};
    };
    const auto objective = [&](std::span<const double> x) {
        const auto [ua, ub] = bases(x);
        return spectrum_entropy(product_basis_diagonal(rho.matrix(), ua, ub)) - s_rho;
    };

    SimplexOptions opts;
    opts.tolerance = cfg.tolerance;
    opts.initial_step = 0.5;
    opts.max_iterations = cfg.max_iterations * static_cast<int>(std::max<std::size_t>(1, (na + nb) / 2));

    Rng rng(cfg.seed);
    std::optional<LocalMinimum> best;
    for (int start = 0; start < cfg.restarts; ++start) {
        std::vector<double> x0(na + nb, 0.0);
        if (start > 0)
            for (auto& v : x0) v = rng.uniform(0.0, kTwoPi);
        if (na + nb == 0) {
            best = LocalMinimum{x0, objective(x0), 0, true};
            break;
        }
        LocalMinimum local = nelder_mead(objective, x0, opts);
        if (!best || local.value < best->value - cfg.tolerance) best = std::move(local);
    }

    ClassicalAnsatz a;
    a.dim_a = da;
    a.dim_b = db;
    a.angles_a.assign(best->x.begin(), best->x.begin() + static_cast<std::ptrdiff_t>(na));
    a.angles_b.assign(best->x.begin() + static_cast<std::ptrdiff_t>(na), best->x.end());
    const auto [ua, ub] = bases(best->x);
    a.weights = product_basis_diagonal(rho.matrix(), ua, ub);
    double total = 0.0;
    for (double w : a.weights) total += w;
    for (auto& w : a.weights) w /= total;
    return {std::max(0.0, best->value), std::move(a), best->converged};
}

EntanglementResult rel_ent_of_entanglement(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    cfg.validate();
    const std::size_t da = rho.dim_a();
    const std::size_t db = rho.dim_b();
    const std::size_t k_terms = separable_terms(rho, cfg);
    const SeparableCoordinates coords{da, db, k_terms};
    const SeparableObjective objective(rho, coords);
    const GradientObjective fg = [&](std::span<const double> x, std::span<double> g) { return objective(x, g); };

    GradientOptions opts;
    opts.max_iterations = cfg.max_gradient_iterations;

    Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

    // Start 0: the closest classical state, its terms cycled over the K slots
    // with equal weight shares and slightly perturbed vectors.
    const auto classical = rel_ent_of_discord(rho, cfg).closest.as_separable();
    SeparableAnsatz warm{da, db, {}, {}, {}};
    const std::size_t base = classical.terms();
    for (std::size_t k = 0; k < k_terms; ++k) {
        const std::size_t src = k % base;
        const std::size_t copies = k_terms / base + (src < k_terms % base ? 1 : 0);
        // Floor keeps every slot movable: w = x^2 has zero gradient at x = 0.
        warm.weights.push_back(std::max(classical.weights[src], 1e-6) / static_cast<double>(copies));
        auto a = classical.states_a[src];
        auto b = classical.states_b[src];
        for (auto& z : a) z += 1e-3 * rng.complex_normal();
        for (auto& z : b) z += 1e-3 * rng.complex_normal();
        warm.states_a.push_back(normalized(std::move(a)));
        warm.states_b.push_back(normalized(std::move(b)));
    }
    double total = 0.0;
    for (double w : warm.weights) total += w;
    for (auto& w : warm.weights) w /= total;

    std::optional<LocalMinimum> best;
    for (int start = 0; start < cfg.restarts; ++start) {
        std::vector<double> x0;
        if (start == 0) {
            x0 = coords.encode(warm);
        } else {
            x0.resize(coords.size());
            for (auto& v : x0) v = rng.normal();
        }
        LocalMinimum local = lbfgs(fg, std::move(x0), opts);
        if (!best || local.value < best->value - cfg.tolerance) best = std::move(local);
    }
    return {std::max(0.0, best->value), coords.decode(best->x), best->converged};
}

DensityMatrix closest_product_state(const DensityMatrix& rho) {
    return product_state(reduced_state(rho, Subsystem::A), reduced_state(rho, Subsystem::B));
}

}  // namespace qdk
