#include "qdk/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdk/errors.hpp"
#include "qdk/rng.hpp"

namespace qdk {

namespace {

std::string fmt_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double take_param(const StateParams& params, std::string_view key, double fallback, double lo,
                  double hi) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    if (!(v >= lo && v <= hi))
        throw ValidationError("parameter " + std::string(key) + "=" + fmt_value(v) +
                              " outside [" + fmt_value(lo) + ", " + fmt_value(hi) + "]");
    return v;
}

void reject_unknown_params(std::string_view name, const StateParams& params,
                           std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok)
            throw ValidationError("state '" + std::string(name) + "' has no parameter '" + key + "'");
    }
}

DensityMatrix bell_phi_plus() {
    const double h = 1.0 / std::numbers::sqrt2;
    return density_from_pure(PureState({h, 0.0, 0.0, h}, 2, 2));
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, std::size_t dim_a, std::size_t dim_b)
    : amps_(std::move(amplitudes)), dim_a_(dim_a), dim_b_(dim_b) {
    if (dim_a == 0 || dim_b == 0 || amps_.size() != dim_a * dim_b)
        throw DimensionError("pure state: amplitude count does not match dimensions");
    double norm2 = 0.0;
    for (const auto& z : amps_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("pure state: non-finite amplitude");
        norm2 += std::norm(z);
    }
    if (std::abs(std::sqrt(norm2) - 1.0) > kPureNormTolerance)
        throw ValidationError("pure state: norm " + fmt_value(std::sqrt(norm2)) + " is not 1");
}

DensityMatrix validate_density(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
    if (dim_a == 0 || dim_b == 0 || !m.is_square() || m.rows() != dim_a * dim_b) {
        std::ostringstream os;
        os << "density matrix: " << m.rows() << "x" << m.cols() << " does not match dims " << dim_a
           << "x" << dim_b;
        throw DimensionError(os.str());
    }
    if (m.hermiticity_defect() > kHermitianTolerance)
        throw ValidationError("density matrix is not Hermitian (defect " +
                              fmt_value(m.hermiticity_defect()) + ")");
    ComplexMatrix h = m.hermitian_part();
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > kDensityTolerance)
        throw ValidationError("density matrix trace is " + fmt_value(tr) + ", expected 1");
    Spectrum s = hermitian_eig(h);
    if (s.values.front() < -kDensityTolerance)
        throw ValidationError("density matrix has negative eigenvalue " +
                              fmt_value(s.values.front()));
    return DensityMatrix(std::move(h), dim_a, dim_b, std::move(s));
}

DensityMatrix density_from_pure(const PureState& psi) {
    return validate_density(ComplexMatrix::outer(psi.amplitudes()), psi.dim_a(), psi.dim_b());
}

DensityMatrix reduced_state(const DensityMatrix& rho, Subsystem keep) {
    const auto r = partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), keep);
    return validate_density(r, r.rows(), 1);
}

DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    return validate_density(kron(rho_a.matrix(), rho_b.matrix()), rho_a.dim(), rho_b.dim());
}

DensityMatrix qubit_state(double x, double y, double z) {
    if (x * x + y * y + z * z > 1.0 + 1e-12)
        throw ValidationError("Bloch vector longer than 1");
    const ComplexMatrix m{{0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y)},
                          {Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z)}};
    return validate_density(m, 2, 1);
}

std::vector<Complex> basis_ket(std::size_t dim, std::size_t index) {
    std::vector<Complex> v(dim);
    v.at(index) = 1.0;
    return v;
}

std::vector<Complex> ket_plus() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {h, h};
}

std::vector<Complex> ket_minus() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {h, -h};
}

std::vector<Complex> kron(std::span<const Complex> u, std::span<const Complex> v) {
    std::vector<Complex> out;
    out.reserve(u.size() * v.size());
    for (const auto& a : u)
        for (const auto& b : v) out.push_back(a * b);
    return out;
}

DensityMatrix named_state(std::string_view name, const StateParams& params) {
    if (name == "bell-phi-plus") {
        reject_unknown_params(name, params, {});
        return bell_phi_plus();
    }
    if (name == "pure") {
        reject_unknown_params(name, params, {"a"});
        const double a = take_param(params, "a", 1.0 / std::numbers::sqrt2, 0.0, 1.0);
        const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
        return density_from_pure(PureState({a, 0.0, 0.0, b}, 2, 2));
    }
    if (name == "cc-mixture") {
        reject_unknown_params(name, params, {});
        return validate_density(ComplexMatrix::diagonal({0.5, 0.0, 0.0, 0.5}), 2, 2);
    }
    if (name == "lo-output") {
        reject_unknown_params(name, params, {});
        const auto one_plus = kron(basis_ket(2, 1), ket_plus());
        ComplexMatrix m = 0.5 * ComplexMatrix::outer(basis_ket(4, 0)) +
                          0.5 * ComplexMatrix::outer(one_plus);
        return validate_density(m, 2, 2);
    }
    if (name == "werner") {
        reject_unknown_params(name, params, {"p"});
        const double p = take_param(params, "p", 0.5, 0.0, 1.0);
        ComplexMatrix m = p * bell_phi_plus().matrix() +
                          ((1.0 - p) / 4.0) * ComplexMatrix::identity(4);
        return validate_density(m, 2, 2);
    }
    if (name == "product") {
        reject_unknown_params(name, params, {"ax", "ay", "az", "bx", "by", "bz"});
        const auto get = [&](std::string_view k) { return take_param(params, k, 0.0, -1.0, 1.0); };
        return product_state(qubit_state(get("ax"), get("ay"), get("az")),
                             qubit_state(get("bx"), get("by"), get("bz")));
    }
    throw UnknownNameError("unknown state '" + std::string(name) + "'");
}

std::vector<std::string> named_state_names() {
    return {"bell-phi-plus", "pure", "cc-mixture", "lo-output", "werner", "product"};
}

PureState random_pure(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
    if (dim_a == 0 || dim_b == 0) throw DimensionError("random_pure: dimensions must be >= 1");
    Rng rng(seed);
    std::vector<Complex> v(dim_a * dim_b);
    double norm2 = 0.0;
    for (auto& z : v) {
        z = rng.complex_normal();
        norm2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : v) z *= inv;
    return PureState(std::move(v), dim_a, dim_b);
}

DensityMatrix random_density(std::size_t dim_a, std::size_t dim_b, std::size_t rank,
                             std::uint64_t seed) {
    const std::size_t n = dim_a * dim_b;
    if (dim_a == 0 || dim_b == 0) throw DimensionError("random_density: dimensions must be >= 1");
    if (rank < 1 || rank > n)
        throw ValidationError("random_density: rank must lie in [1, " + std::to_string(n) + "]");
    Rng rng(seed);
    ComplexMatrix g(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < rank; ++k) g(i, k) = rng.complex_normal();
    ComplexMatrix m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    return validate_density(m.hermitian_part(), dim_a, dim_b);
}

}  // namespace qdk
