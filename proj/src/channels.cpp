#include "qdk/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdk/errors.hpp"
#include "qdk/rng.hpp"

namespace qdk {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw ValidationError("channel needs at least one Kraus operator");
    for (const auto& k : ops_)
        if (k.rows() != ops_.front().rows() || k.cols() != ops_.front().cols() || k.rows() == 0)
            throw ValidationError("Kraus operators must share one non-empty shape");
    if (completeness_residual() > kCompletenessTolerance)
        throw ValidationError("Kraus operators violate completeness: sum K^dagger K != I");
}

double KrausChannel::completeness_residual() const {
    ComplexMatrix sum(dim_in(), dim_in());
    for (const auto& k : ops_) sum += k.adjoint() * k;
    sum -= ComplexMatrix::identity(dim_in());
    double worst = 0.0;
    for (const auto& z : sum.data()) worst = std::max(worst, std::abs(z));
    return worst;
}

DensityMatrix apply(const DensityMatrix& rho, const KrausChannel& ch) {
    if (ch.dim_in() != rho.dim())
        throw DimensionError("channel input dimension " + std::to_string(ch.dim_in()) +
                             " does not match state dimension " + std::to_string(rho.dim()));
    ComplexMatrix out(ch.dim_out(), ch.dim_out());
    for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
    if (ch.dim_out() == ch.dim_in()) return validate_density(out.hermitian_part(), rho.dim_a(), rho.dim_b());
    return validate_density(out.hermitian_part(), ch.dim_out(), 1);
}

DensityMatrix apply(const DensityMatrix& rho, const LocalChannel& ch) {
    const std::size_t acted = rho.dim_of(ch.side);
    if (ch.channel.dim_in() != acted)
        throw DimensionError("local channel input dimension " + std::to_string(ch.channel.dim_in()) +
                             " does not match subsystem " + to_string(ch.side));
    const std::size_t untouched = rho.dim_of(other_side(ch.side));
    const auto id = ComplexMatrix::identity(untouched);
    const std::size_t n_out = ch.channel.dim_out() * untouched;
    ComplexMatrix out(n_out, n_out);
    for (const auto& k : ch.channel.operators()) {
        const ComplexMatrix lifted = ch.side == Subsystem::A ? kron(k, id) : kron(id, k);
        out += lifted * rho.matrix() * lifted.adjoint();
    }
    const std::size_t dim_a = ch.side == Subsystem::A ? ch.channel.dim_out() : rho.dim_a();
    const std::size_t dim_b = ch.side == Subsystem::B ? ch.channel.dim_out() : rho.dim_b();
    return validate_density(out.hermitian_part(), dim_a, dim_b);
}

DensityMatrix apply(const DensityMatrix& rho, std::span<const LocalChannel> op) {
    DensityMatrix out = rho;
    for (const auto& ch : op) out = apply(out, ch);
    return out;
}

KrausChannel identity_channel(std::size_t dim) { return KrausChannel({ComplexMatrix::identity(dim)}); }

KrausChannel counterexample_channel() {
    return KrausChannel({ComplexMatrix::outer(basis_ket(2, 0), basis_ket(2, 0)),
                         ComplexMatrix::outer(ket_plus(), basis_ket(2, 1))});
}

KrausChannel fully_depolarizing_qubit() {
    const Complex i(0.0, 1.0);
    return KrausChannel({ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}, ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}},
                         ComplexMatrix{{0.0, -0.5 * i}, {0.5 * i, 0.0}}, ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}}});
}

KrausChannel random_local_channel(std::size_t dim, std::size_t kraus_count, std::uint64_t seed) {
    if (dim == 0 || kraus_count == 0) throw ValidationError("random channel needs dim >= 1 and kraus_count >= 1");
    const std::size_t rows = dim * kraus_count;
    Rng rng(seed);
    ComplexMatrix v(rows, dim);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < dim; ++c) v(r, c) = rng.complex_normal();

    // Modified Gram-Schmidt, two passes; positive R diagonal gives Haar measure.
    for (std::size_t c = 0; c < dim; ++c) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t p = 0; p < c; ++p) {
                Complex ip = 0.0;
                for (std::size_t r = 0; r < rows; ++r) ip += std::conj(v(r, p)) * v(r, c);
                for (std::size_t r = 0; r < rows; ++r) v(r, c) -= ip * v(r, p);
            }
        double norm = 0.0;
        for (std::size_t r = 0; r < rows; ++r) norm += std::norm(v(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < rows; ++r) v(r, c) /= norm;
    }

    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < kraus_count; ++k) {
        ComplexMatrix block(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) block(r, c) = v(k * dim + r, c);
        ops.push_back(std::move(block));
    }
    return KrausChannel(std::move(ops));
}

}  // namespace qdk
