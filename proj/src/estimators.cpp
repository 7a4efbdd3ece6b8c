#include "adkit/estimators.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace adkit {

CovEstimate::CovEstimate(const cmat& a) {
    if (a.rows() != a.cols()) throw DimensionError("CovEstimate: matrix must be square");
    matrix = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<cmat> es(matrix);
    const int m = static_cast<int>(matrix.rows());
    eigenvalues.resize(m);
    eigenvectors.resize(m, m);
    for (int k = 0; k < m; ++k) {
        eigenvalues[k] = es.eigenvalues()[m - 1 - k];
        eigenvectors.col(k) = es.eigenvectors().col(m - 1 - k);
    }
}

void validate_observation(const Observation& x) {
    if (x.size() < 1) throw DomainError("observation must have M >= 1");
    if (!x.allFinite()) throw DomainError("observation has non-finite entries");
    if (x.squaredNorm() == 0.0) throw DomainError("observation has zero norm");
}

cmat average_outer(const Observation& x, const std::vector<Permutation>& perms) {
    const int m = static_cast<int>(x.size());
    if (perms.empty()) throw DomainError("average_outer: need at least one permutation");
    cmat y(m, static_cast<int>(perms.size()));
    for (std::size_t j = 0; j < perms.size(); ++j) y.col(static_cast<int>(j)) = perms[j].apply(x);
    return (y * y.adjoint()) / static_cast<double>(perms.size());
}

cmat group_averaged_matrix(const Observation& x, const GroupRep& g) {
    if (g.dim != x.size()) throw DimensionError("group_averaged: G.dim != M");
    if (g.kind == GroupKind::Conjugated) {
        // U^H F_base(U x) U, which equals the average over the conjugated elements.
        const cvec ux = g.unitary * x;
        return g.unitary.adjoint() * group_averaged_matrix(ux, *g.base) * g.unitary;
    }
    return average_outer(x, g.perms);
}

CovEstimate group_averaged(const Observation& x, const GroupRep& g) {
    validate_observation(x);
    return CovEstimate(group_averaged_matrix(x, g));
}

CovEstimate pase(const Observation& x, const GroupRep& g, std::size_t n, const OrderingStrategy& surplus) {
    validate_observation(x);
    if (n == 0) throw DomainError("pase: n must be >= 1");
    if (g.dim != x.size()) throw DimensionError("pase: G.dim != M");
    const int m = static_cast<int>(x.size());
    const std::size_t from_group = std::min(n, g.order());
    cmat acc = cmat::Zero(m, m);
    for (std::size_t k = 0; k < from_group; ++k) {
        const cvec y = g.act(k, x);
        acc.noalias() += y * y.adjoint();
    }
    if (n > from_group) {
        OrderingIterator it(surplus, m);
        for (std::size_t k = from_group; k < n; ++k) {
            const cvec y = it.next().apply(x);
            acc.noalias() += y * y.adjoint();
        }
    }
    return CovEstimate(acc / static_cast<double>(n));
}

cmat cayley_matrix(const Observation& x, const GroupRep& g) {
    if (!g.is_permutation()) throw DomainError("cayley_matrix: group elements must be permutations");
    if (g.dim != x.size()) throw DimensionError("cayley_matrix: G.dim != M");
    cmat c(x.size(), static_cast<int>(g.order()));
    for (std::size_t j = 0; j < g.order(); ++j) c.col(static_cast<int>(j)) = g.perms[j].apply(x);
    return c;
}

EigSnr eig_snr(const CovEstimate& cov, int k) {
    const int m = cov.dim();
    if (k < 1 || k >= m) throw DomainError("eig_snr: K must satisfy 1 <= K < M");
    double noise = cov.eigenvalues.tail(m - k).mean();
    const double floor = 1e-15 * std::abs(cov.trace());
    EigSnr r;
    if (noise < floor) {
        noise = floor;
        r.degenerate = true;
    }
    r.db = 10.0 * std::log10(cov.eigenvalues[0] / noise);
    return r;
}

CovEstimate sm_expectation(const Observation& x) {
    const int m = static_cast<int>(x.size());
    if (m < 2) throw DomainError("sm_expectation: M must be >= 2");
    const double s2 = x.squaredNorm();
    const double sum_sq = std::norm(x.sum());
    const double diag = s2 / m;
    const double off = (sum_sq - s2) / (static_cast<double>(m) * (m - 1));
    cmat e = cmat::Constant(m, m, cplx(off, 0.0));
    e.diagonal().setConstant(cplx(diag, 0.0));
    return CovEstimate(e);
}

namespace {

bool close_rel(const cmat& a, const cmat& b, double tol) {
    const double scale = std::max(a.norm(), b.norm());
    return (a - b).norm() <= tol * (scale > 0 ? scale : 1.0);
}

}  // namespace

int effective_group_order(const Statistic& f, const GroupRep& g, const Observation& x) {
    if (g.dim != x.size()) throw DimensionError("effective_group_order: G.dim != M");
    std::vector<cmat> values;
    for (std::size_t k = 0; k < g.order(); ++k) {
        const cvec y = g.act(k, x);
        cmat v;
        if (f.kind == StatisticKind::OuterProduct) {
            v = y * y.adjoint();
        } else {
            cplx s = 0;
            for (int i = 0; i < y.size(); ++i) s += std::pow(y[i], f.order);
            v = cmat::Constant(1, 1, s / static_cast<double>(y.size()));
        }
        bool found = false;
        for (const auto& w : values) {
            if (close_rel(v, w, 1e-9)) {
                found = true;
                break;
            }
        }
        if (!found) values.push_back(std::move(v));
    }
    return static_cast<int>(values.size());
}

}  // namespace adkit
