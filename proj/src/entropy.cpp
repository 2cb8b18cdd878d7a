#include "qdk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdk/errors.hpp"

namespace qdk {

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("probability vector is empty");
    double sum = 0.0;
    for (double p : probs_) {
        if (!std::isfinite(p) || p < 0.0) throw ValidationError("probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw ValidationError("probabilities do not sum to 1");
}

double EntropyValue::bits() const {
    if (infinite_) throw std::domain_error("relative entropy is infinite");
    return bits_;
}

double shannon(const ProbabilityVector& p) {
    double h = 0.0;
    for (double x : p.probs())
        if (x > 0.0) h -= x * std::log2(x);
    return std::max(h, 0.0);
}

double spectrum_entropy(std::span<const double> eigenvalues) {
    double h = 0.0;
    for (double x : eigenvalues)
        if (x >= kZeroEigenvalue) h -= x * std::log2(x);
    return std::max(h, 0.0);
}

double von_neumann(const DensityMatrix& rho) { return spectrum_entropy(rho.spectrum().values); }

EntropyValue relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho) {
    if (sigma.dim() != rho.dim())
        throw DimensionError("relative entropy: operators act on different spaces");
    const Spectrum& s = rho.spectrum();
    const ComplexMatrix& m = sigma.matrix();
    const std::size_t n = rho.dim();

    double outside_support = 0.0;
    double cross = 0.0;  // tr(sigma log rho)
    for (std::size_t k = 0; k < n; ++k) {
        // <v_k| sigma |v_k>
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += m(i, j) * s.vectors(j, k);
            w += (std::conj(s.vectors(i, k)) * row).real();
        }
        if (s.values[k] < kZeroEigenvalue)
            outside_support += w;
        else
            cross += w * std::log2(s.values[k]);
    }
    if (outside_support > kZeroEigenvalue) return EntropyValue::infinite();
    return EntropyValue::finite(std::max(0.0, -von_neumann(sigma) - cross));
}

double mutual_information(const DensityMatrix& rho) {
    const double sa = von_neumann(reduced_state(rho, Subsystem::A));
    const double sb = von_neumann(reduced_state(rho, Subsystem::B));
    return std::max(0.0, sa + sb - von_neumann(rho));
}

double naive_conditional(const DensityMatrix& rho, Subsystem conditioned_on) {
    return von_neumann(rho) - von_neumann(reduced_state(rho, conditioned_on));
}

EntropyValue mutual_information_as_relent(const DensityMatrix& rho) {
    const auto product = product_state(reduced_state(rho, Subsystem::A), reduced_state(rho, Subsystem::B));
    return relative_entropy(rho, product);
}

}  // namespace qdk
