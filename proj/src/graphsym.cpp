#include "adkit/graphsym.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "adkit/parallel.hpp"

namespace adkit {

namespace {

constexpr int kMaxBruteVertices = 8;

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

double real_commut_residual(const rmat& a, const rmat& r) {
    const double na = a.norm();
    const double nr = r.norm();
    if (na == 0.0 || nr == 0.0) return 0.0;
    return (a * r - r * a).norm() / (na * nr);
}

// Index of pair (i, j), i < j, in row-major upper-triangle order.
int pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

rmat laplacian(const Graph& g) {
    rmat l = -g.adjacency;
    for (int i = 0; i < g.n; ++i) l(i, i) = g.adjacency.row(i).sum();
    return l;
}

rmat diffusion_cov(const Graph& g, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("diffusion_cov: alpha must be positive");
    const rmat a = rmat::Identity(g.n, g.n) + alpha * laplacian(g);
    rmat r = a.ldlt().solve(rmat::Identity(g.n, g.n));
    return (r + r.transpose()) / 2.0;
}

bool has_distinct_eigenvalues(const rmat& r, double gap_tol) {
    Eigen::SelfAdjointEigenSolver<rmat> es(r, Eigen::EigenvaluesOnly);
    const rvec& ev = es.eigenvalues();
    for (int k = 1; k < ev.size(); ++k)
        if (ev[k] - ev[k - 1] <= gap_tol) return false;
    return true;
}

bool is_automorphism(const Graph& g, const Permutation& sigma) {
    if (sigma.size() != g.n) throw DimensionError("is_automorphism: size mismatch");
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.adjacency(i, j) != g.adjacency(sigma.map[i], sigma.map[j])) return false;
    return true;
}

GroupRep brute_aut_group(const Graph& g, Exec exec) {
    if (g.n > kMaxBruteVertices) throw DomainError("brute_aut_group: n must be <= 8");
    if (g.n == 0) return custom_group({Permutation::identity(0)}, "Aut");
    const auto perms = all_permutations(g.n);
    std::vector<char> keep(perms.size(), 0);
    parallel_for(static_cast<std::ptrdiff_t>(perms.size()), exec, [&](std::ptrdiff_t k) {
        keep[k] = is_automorphism(g, Permutation(perms[k])) ? 1 : 0;
    });
    std::vector<Permutation> elems;
    for (std::size_t k = 0; k < perms.size(); ++k)
        if (keep[k]) elems.emplace_back(perms[k]);
    return custom_group(std::move(elems), "Aut");
}

DeltaAutResult delta_aut_test(const Permutation& sigma, const rmat& r, double tol) {
    if (sigma.size() != r.rows()) throw DimensionError("delta_aut_test: size mismatch");
    DeltaAutResult res;
    res.delta = real_commut_residual(sigma.matrix(), r);
    res.is_automorphism = res.delta <= tol;
    res.degenerate_spectrum = !has_distinct_eigenvalues(r);
    return res;
}

std::vector<double> delta_scan(const rmat& r, Exec exec) {
    const int n = static_cast<int>(r.rows());
    if (n > kMaxBruteVertices) throw DomainError("delta_scan: n must be <= 8");
    const auto perms = all_permutations(n);
    std::vector<double> out(perms.size());
    parallel_for(static_cast<std::ptrdiff_t>(perms.size()), exec, [&](std::ptrdiff_t k) {
        out[k] = real_commut_residual(Permutation(perms[k]).matrix(), r);
    });
    return out;
}

std::uint32_t adjacency_code(const Graph& g) {
    if (g.n > kMaxBruteVertices) throw DomainError("adjacency_code: n must be <= 8");
    std::uint32_t code = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.has_edge(i, j)) code |= 1u << pair_index(g.n, i, j);
    return code;
}

Graph graph_from_code(int n, std::uint32_t code) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (code & (1u << pair_index(n, i, j))) g.add_edge(i, j);
    return g;
}

namespace {

// For each vertex permutation, the image of every pair index under relabeling.
struct PairMaps {
    int n = 0;
    int pairs = 0;
    std::vector<std::vector<int>> maps;
};

PairMaps build_pair_maps(int n) {
    PairMaps pm;
    pm.n = n;
    pm.pairs = n * (n - 1) / 2;
    for (const auto& p : all_permutations(n)) {
        std::vector<int> m(pm.pairs);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m[pair_index(n, i, j)] = pair_index(n, p[i], p[j]);
        pm.maps.push_back(std::move(m));
    }
    return pm;
}

std::uint32_t canonical_with(const PairMaps& pm, std::uint32_t code) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (const auto& m : pm.maps) {
        std::uint32_t c = 0;
        for (int b = 0; b < pm.pairs; ++b)
            if (code & (1u << b)) c |= 1u << m[b];
        best = std::min(best, c);
    }
    return best;
}

}  // namespace

std::uint32_t canonical_code(const Graph& g) {
    return canonical_with(build_pair_maps(g.n), adjacency_code(g));
}

std::vector<Graph> enumerate_graphs(int n, Exec exec) {
    if (n < 1 || n > 6) throw DomainError("enumerate_graphs: supported for 1 <= n <= 6");
    const PairMaps pm = build_pair_maps(n);
    const std::size_t total = std::size_t{1} << pm.pairs;
    std::vector<std::uint32_t> canon(total);
    parallel_for(static_cast<std::ptrdiff_t>(total), exec, [&](std::ptrdiff_t code) {
        canon[code] = canonical_with(pm, static_cast<std::uint32_t>(code));
    });
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    std::vector<Graph> out;
    out.reserve(canon.size());
    for (auto c : canon) out.push_back(graph_from_code(n, c));
    return out;
}

bool is_circulant_graph(const GroupRep& aut) {
    // A graph on n vertices is circulant iff its automorphism group contains an n-cycle.
    for (const auto& p : aut.perms) {
        if (p.size() == 0) continue;
        int len = 1;
        for (int v = p.map[0]; v != 0; v = p.map[v]) ++len;
        if (len == p.size()) return true;
    }
    return false;
}

namespace {

rvec adjacency_spectrum(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<rmat> es(g.adjacency, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

std::vector<rvec> circulant_spectra(int n) {
    // Connection sets are closed under s -> n - s; pick a subset of {1, ..., floor(n/2)}.
    const int half = n / 2;
    std::vector<rvec> out;
    for (int mask = 0; mask < (1 << half); ++mask) {
        Graph g(n);
        for (int s = 1; s <= half; ++s) {
            if (!(mask & (1 << (s - 1)))) continue;
            for (int i = 0; i < n; ++i) {
                const int j = (i + s) % n;
                if (!g.has_edge(i, j)) g.add_edge(i, j);
            }
        }
        out.push_back(adjacency_spectrum(g));
    }
    return out;
}

PipelineResult filter_pipeline(const std::vector<Graph>& graphs, Exec exec) {
    PipelineResult res;
    if (graphs.empty()) {
        res.stages.push_back({"all", 0});
        return res;
    }
    const int n = graphs.front().n;
    std::vector<GroupRep> auts(graphs.size());
    parallel_for(static_cast<std::ptrdiff_t>(graphs.size()), exec,
                 [&](std::ptrdiff_t k) { auts[k] = brute_aut_group(graphs[k], Exec::Serial); });
    const auto circ = circulant_spectra(n);

    std::vector<std::size_t> cur(graphs.size());
    std::iota(cur.begin(), cur.end(), 0);
    res.stages.push_back({"all", static_cast<int>(cur.size())});

    auto apply = [&](const std::string& name, auto pred) {
        std::vector<std::size_t> next;
        for (auto k : cur)
            if (pred(k)) next.push_back(k);
        cur = std::move(next);
        res.stages.push_back({name, static_cast<int>(cur.size())});
    };

    apply("connected", [&](std::size_t k) { return graphs[k].connected(); });
    apply("nontrivial_aut", [&](std::size_t k) { return auts[k].order() > 1; });
    apply("aut_divisible_by_n", [&](std::size_t k) { return auts[k].order() % static_cast<std::size_t>(n) == 0; });
    apply("non_abelian", [&](std::size_t k) { return !is_abelian(auts[k]); });
    apply("not_circulant", [&](std::size_t k) { return !is_circulant_graph(auts[k]); });
    apply("not_cospectral_circulant", [&](std::size_t k) {
        const rvec s = adjacency_spectrum(graphs[k]);
        for (const auto& c : circ)
            if ((s - c).cwiseAbs().maxCoeff() < 1e-9) return false;
        return true;
    });
    apply("aut_order_n", [&](std::size_t k) { return auts[k].order() == static_cast<std::size_t>(n); });

    for (auto k : cur) res.survivors.push_back(graphs[k]);
    return res;
}

std::vector<Permutation> cycle_example_generators(int n) {
    if (n < 3) throw DomainError("cycle_example_generators: n must be >= 3");
    std::vector<int> tau(n), tau2(n), refl(n);
    for (int i = 0; i < n; ++i) {
        tau[i] = (i + 1) % n;
        tau2[i] = (i + 2) % n;
        refl[i] = n - 1 - i;
    }
    return {Permutation(tau), Permutation(tau2), Permutation(refl), Permutation::from_cycles(n, {{0, 2}})};
}

std::vector<Permutation> generic_generators(int n) {
    if (n < 3) throw DomainError("generic_generators: n must be >= 3");
    std::vector<int> tau(n), refl(n), swap(n);
    const int h = n / 2;
    for (int i = 0; i < n; ++i) {
        tau[i] = (i + 1) % n;
        refl[i] = n - 1 - i;
        swap[i] = i;
    }
    for (int i = 0; i < h; ++i) {
        swap[i] = n - h + i;
        swap[n - h + i] = i;
    }
    const std::vector<Permutation> all{Permutation(tau), Permutation(refl), Permutation::from_cycles(n, {{0, 1}}),
                                       Permutation(swap), Permutation::from_cycles(n, {{0, 1, 2}})};
    std::vector<Permutation> out;
    for (const auto& p : all)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    return out;
}

GevpBasis difference_basis(const std::vector<Permutation>& perms) {
    GevpBasis b;
    for (const auto& p : perms) b.mats.push_back(p.matrix() - rmat::Identity(p.size(), p.size()));
    return b;
}

GevpSolution dc_gevp(const rmat& r, const GevpBasis& basis) {
    const int d = static_cast<int>(basis.mats.size());
    if (d == 0) throw DomainError("dc_gevp: empty basis");
    const int m = static_cast<int>(r.rows());
    for (const auto& b : basis.mats)
        if (b.rows() != m || b.cols() != m) throw DimensionError("dc_gevp: basis size mismatch");

    std::vector<rmat> comm(d);
    for (int i = 0; i < d; ++i) comm[i] = basis.mats[i] * r - r * basis.mats[i];
    rmat c(d, d), nmat(d, d);
    parallel_for(static_cast<std::ptrdiff_t>(d) * d, Exec::Parallel, [&](std::ptrdiff_t idx) {
        const int i = static_cast<int>(idx / d);
        const int j = static_cast<int>(idx % d);
        c(i, j) = (comm[i].array() * comm[j].array()).sum();
        nmat(i, j) = (basis.mats[i].array() * basis.mats[j].array()).sum();
    });

    Eigen::SelfAdjointEigenSolver<rmat> gram(nmat, Eigen::EigenvaluesOnly);
    const double gmax = gram.eigenvalues().maxCoeff();
    if (!(gmax > 0.0) || gram.eigenvalues().minCoeff() <= 1e-12 * gmax)
        throw DomainError("dc_gevp: singular Gram matrix (dependent basis)");

    // Whitening: with N = L L^T the problem becomes L^{-1} C L^{-T} w = lambda w, v = L^{-T} w.
    Eigen::LLT<rmat> llt(nmat);
    const rmat l = llt.matrixL();
    const rmat linv = l.triangularView<Eigen::Lower>().solve(rmat::Identity(d, d));
    rmat cw = linv * c * linv.transpose();
    cw = (cw + cw.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<rmat> es(cw);
    const rvec& ev = es.eigenvalues();
    const double lam = std::max(ev[0], 0.0);
    const double scale = std::max(std::abs(ev[d - 1]), 1.0);
    int mult = 1;
    while (mult < d && ev[mult] - ev[0] <= 1e-10 * scale) ++mult;
    const rmat w = es.eigenvectors().leftCols(mult);

    rvec wsel;
    if (mult == 1) {
        wsel = w.col(0);
    } else {
        // The eigenspace columns map to Frobenius-orthonormal matrices A_w; the
        // coordinates of basis element j in that frame are (L^T... ) = (L w)_j.
        const rmat coords = l * w;  // row j: inner products <B_j, A_w>
        int pick = -1;
        for (int j = 0; j < d; ++j) {
            if (coords.row(j).norm() > 1e-9 * std::sqrt(nmat(j, j))) {
                pick = j;
                break;
            }
        }
        wsel = pick >= 0 ? rvec(coords.row(pick).transpose()) : rvec(w.col(0));
        wsel = w * wsel;
        wsel.normalize();
    }
    rvec v = linv.transpose() * wsel;

    rmat a = rmat::Zero(m, m);
    for (int i = 0; i < d; ++i) a += v[i] * basis.mats[i];
    const double na = a.norm();
    a /= na;
    v /= na;
    const double amax = a.cwiseAbs().maxCoeff();
    for (int i = 0; i < m * m; ++i) {
        const double x = a(i / m, i % m);
        if (std::abs(x) > 1e-9 * amax) {
            if (x < 0) {
                a = -a;
                v = -v;
            }
            break;
        }
    }
    GevpSolution sol;
    sol.a_star = a;
    sol.lambda_min = lam;
    sol.coefficients = v;
    return sol;
}

std::vector<int> hungarian_min_cost(const rmat& cost) {
    const int n = static_cast<int>(cost.rows());
    if (cost.cols() != n) throw DimensionError("hungarian: square matrix required");
    if (!cost.allFinite()) throw DomainError("hungarian: non-finite entries");
    const double inf = std::numeric_limits<double>::infinity();
    // Potentials-based O(n^3) assignment with 1-based sentinel column 0.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) assign[p[j] - 1] = j - 1;
    return assign;
}

namespace {

double assignment_value(const rmat& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 0) return 0.0;
    rmat sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = -a(rows[i], cols[j]);
    const auto asg = hungarian_min_cost(sub);
    double v = 0.0;
    for (int i = 0; i < k; ++i) v += a(rows[i], cols[asg[i]]);
    return v;
}

}  // namespace

Permutation hungarian_round(const rmat& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw DimensionError("hungarian_round: square matrix required");
    if (!a.allFinite()) throw DomainError("hungarian_round: non-finite entries");
    std::vector<int> rows(n), cols(n);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    const double best = assignment_value(a, rows, cols);
    const double tol = 1e-9 * std::max(1.0, a.cwiseAbs().maxCoeff() * n);

    // Fix rows in order, each to the smallest column that still admits an optimal completion.
    std::vector<int> map(n, -1);
    double fixed = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> rest_rows(rows.begin() + i + 1, rows.end());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const int j = cols[c];
            std::vector<int> rest_cols = cols;
            rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(c));
            const double total = fixed + a(i, j) + assignment_value(a, rest_rows, rest_cols);
            if (total >= best - tol) {
                map[i] = j;
                fixed += a(i, j);
                cols = std::move(rest_cols);
                break;
            }
        }
        if (map[i] < 0) throw DomainError("hungarian_round: internal tie-break failure");
    }
    return Permutation(std::move(map));
}

namespace {

rvec vectorize(const rmat& a) { return Eigen::Map<const rvec>(a.data(), a.size()); }

// Orthonormal basis (columns) of span{vec(P_g)}.
rmat permutation_span(const std::vector<Permutation>& perms, int m) {
    rmat v(m * m, static_cast<int>(perms.size()));
    for (std::size_t k = 0; k < perms.size(); ++k) v.col(static_cast<int>(k)) = vectorize(perms[k].matrix());
    Eigen::ColPivHouseholderQR<rmat> qr(v);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    const rmat q = qr.householderQ() * rmat::Identity(m * m, rank);
    return q;
}

}  // namespace

SubgroupResult sequential_gevp(const rmat& r, const GevpBasis& basis, double tau, int k_max,
                               std::size_t closure_cap) {
    if (tau < 0.0) throw DomainError("sequential_gevp: tau must be >= 0");
    if (k_max < 1) throw DomainError("sequential_gevp: k_max must be >= 1");
    const int m = static_cast<int>(r.rows());

    SubgroupResult res;
    res.elements = custom_group({Permutation::identity(m)}, "G");

    for (int it = 1; it <= k_max; ++it) {
        res.iterations = it;
        SeqGevpStep step;
        step.iteration = it;
        step.group_order = res.elements.order();

        const rmat q = permutation_span(res.elements.perms, m);
        GevpBasis deflated;
        rmat kept(m * m, 0);
        for (const auto& b : basis.mats) {
            rvec v = vectorize(b);
            v -= q * (q.transpose() * v);
            if (v.norm() < 1e-10) continue;
            // Drop residuals dependent on ones already kept, so the Gram matrix stays regular.
            rvec w = v;
            if (kept.cols() > 0) {
                Eigen::HouseholderQR<rmat> kq(kept);
                const rmat kq_q = kq.householderQ() * rmat::Identity(m * m, kept.cols());
                w -= kq_q * (kq_q.transpose() * w);
            }
            if (w.norm() < 1e-10) continue;
            kept.conservativeResize(Eigen::NoChange, kept.cols() + 1);
            kept.col(kept.cols() - 1) = v;
            deflated.mats.push_back(Eigen::Map<const rmat>(v.data(), m, m));
        }
        step.basis_size = deflated.mats.size();
        if (deflated.mats.empty()) {
            step.note = "empty deflated basis";
            res.trace.push_back(step);
            break;
        }

        const GevpSolution sol = dc_gevp(r, deflated);
        step.lambda_min = sol.lambda_min;
        for (const auto& g : res.elements.perms)
            step.max_overlap_with_group =
                std::max(step.max_overlap_with_group, std::abs((sol.a_star.array() * g.matrix().array()).sum()));

        // The eigenvector sign is arbitrary: round both orientations and keep the
        // candidate outside G_k with the smaller residual (the + orientation on ties).
        auto in_elements = [&](const Permutation& p) {
            return std::find(res.elements.perms.begin(), res.elements.perms.end(), p) != res.elements.perms.end();
        };
        Permutation cand = hungarian_round(sol.a_star);
        double cand_delta = real_commut_residual(cand.matrix(), r);
        const Permutation flip = hungarian_round(-sol.a_star);
        const double flip_delta = real_commut_residual(flip.matrix(), r);
        if (!in_elements(flip) && (in_elements(cand) || flip_delta < cand_delta)) {
            cand = flip;
            cand_delta = flip_delta;
        }
        step.candidate = cand;
        step.delta = cand_delta;
        const bool in_group = in_elements(cand);
        if (in_group) {
            step.note = "candidate already in G_k";
            res.trace.push_back(step);
            break;
        }
        if (step.delta > tau) {
            step.note = "rejected";
            res.trace.push_back(step);
            break;
        }
        std::vector<Permutation> gens = res.accepted;
        gens.push_back(cand);
        GroupRep next = closure(gens, m, closure_cap);
        step.accepted = true;
        step.group_order = next.order();
        step.note = "accepted";
        res.accepted.push_back(cand);
        res.elements = std::move(next);
        res.trace.push_back(step);
    }
    return res;
}

}  // namespace adkit
