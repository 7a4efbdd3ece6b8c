#include "adkit/metrics.hpp"

#include <cmath>
#include <numbers>

#include "adkit/estimators.hpp"
#include "adkit/rng.hpp"

namespace adkit {

double commut_residual(const cmat& f, const cmat& r) {
    if (f.rows() != r.rows() || f.cols() != r.cols()) throw DimensionError("commut_residual: size mismatch");
    const double nf = f.norm();
    const double nr = r.norm();
    if (nf == 0.0 || nr == 0.0) throw DomainError("commut_residual: zero-norm input");
    return (f * r - r * f).norm() / (nf * nr);
}

double abs_mismatch(const cmat& f, const cmat& r) {
    if (f.rows() != r.rows() || f.cols() != r.cols()) throw DimensionError("abs_mismatch: size mismatch");
    const double nf = f.norm();
    if (nf == 0.0) throw DomainError("abs_mismatch: zero-norm F");
    return (f * r - r * f).norm() / nf;
}

double coloring_index(const cmat& q) {
    const int m = static_cast<int>(q.rows());
    const double nq = q.norm();
    if (nq == 0.0) throw DomainError("coloring_index: zero matrix");
    const double qbar = q.trace().real() / m;
    return (q - qbar * cmat::Identity(m, m)).norm() / nq;
}

double spectral_concentration(const CovEstimate& cov) {
    const double tr = cov.trace();
    if (!(tr > 0.0)) throw DomainError("spectral_concentration: trace must be positive");
    return cov.eigenvalues[0] / tr;
}

cmat dft_matrix(int m) {
    cmat t(m, m);
    const double s = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; ++k)
        for (int n = 0; n < m; ++n)
            t(k, n) = std::polar(s, -2.0 * std::numbers::pi * ((static_cast<long>(k) * n) % m) / m);
    return t;
}

rmat dct2_matrix(int m) {
    rmat c(m, m);
    for (int k = 0; k < m; ++k) {
        const double ck = std::sqrt((k == 0 ? 1.0 : 2.0) / m);
        for (int n = 0; n < m; ++n) c(k, n) = ck * std::cos(std::numbers::pi * (2 * n + 1) * k / (2.0 * m));
    }
    return c;
}

namespace {

cmat projector_transform(const GroupRep& g) {
    // A generic Hermitian matrix averaged over the group lies in the commutant;
    // its eigenvectors diagonalize the commutant for multiplicity-free actions.
    const int m = g.dim;
    Rng rng(0xC0FFEE, static_cast<std::uint64_t>(m));
    cmat h(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) h(i, j) = rng.complex_normal(1.0);
    h = (h + h.adjoint()).eval();
    cmat avg = cmat::Zero(m, m);
    for (std::size_t k = 0; k < g.order(); ++k) {
        const cmat e = g.element_matrix(k);
        avg += e * h * e.adjoint();
    }
    CovEstimate ce(avg);
    return ce.eigenvectors.adjoint();
}

}  // namespace

cmat group_transform(const GroupRep& g) {
    switch (g.kind) {
        case GroupKind::Cyclic: return dft_matrix(g.dim);
        case GroupKind::Dihedral: return dct2_matrix(g.dim).cast<cplx>();
        case GroupKind::DirectProduct: {
            cmat t = dft_matrix(g.factors[0]);
            for (std::size_t a = 1; a < g.factors.size(); ++a) {
                const cmat f = dft_matrix(g.factors[a]);
                cmat k(t.rows() * f.rows(), t.cols() * f.cols());
                for (int i = 0; i < t.rows(); ++i)
                    for (int j = 0; j < t.cols(); ++j)
                        k.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = t(i, j) * f;
                t = k;
            }
            return t;
        }
        case GroupKind::Conjugated: return group_transform(*g.base) * g.unitary;
        case GroupKind::Trivial: return cmat::Identity(g.dim, g.dim);
        case GroupKind::Symmetric:
        case GroupKind::Custom: return projector_transform(g);
    }
    throw DomainError("group_transform: no transform for this group kind");
}

double diag_residual_with(const cmat& t, const cmat& q) {
    const double nq = q.norm();
    if (nq == 0.0) throw DomainError("diag_residual: zero matrix");
    cmat d = t * q * t.adjoint();
    d.diagonal().setZero();
    return d.norm() / nq;
}

double diag_residual(const GroupRep& g, const cmat& q) {
    if (g.dim != q.rows()) throw DimensionError("diag_residual: size mismatch");
    return diag_residual_with(group_transform(g), q);
}

double sample_commut_residual(const GroupRep& g, const Observation& x) {
    validate_observation(x);
    const cmat f = group_averaged_matrix(x, g);
    return commut_residual(f, x * x.adjoint());
}

double perm_commutator_cost(const Permutation& sigma, const rvec& eigenvalues) {
    if (sigma.size() != eigenvalues.size()) throw DimensionError("perm_commutator_cost: size mismatch");
    double c = 0.0;
    for (int k = 0; k < sigma.size(); ++k) {
        const double d = eigenvalues[k] - eigenvalues[sigma.map[k]];
        c += d * d;
    }
    return c;
}

MismatchReport mismatch_report(const GroupRep& g, const Observation& x, const cmat& r) {
    const CovEstimate f = group_averaged(x, g);
    MismatchReport rep;
    rep.delta = commut_residual(f, r);
    rep.delta_abs = abs_mismatch(f, r);
    rep.alpha = coloring_index(r);
    rep.psi = spectral_concentration(f);
    return rep;
}

}  // namespace adkit
