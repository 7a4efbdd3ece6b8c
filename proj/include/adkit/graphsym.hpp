#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adkit/graph.hpp"
#include "adkit/groups.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// L = D - A.
rmat laplacian(const Graph& g);

/// R = (I + alpha L)^{-1}.
rmat diffusion_cov(const Graph& g, double alpha = 1.0);

/// True when all adjacent eigenvalue gaps exceed gap_tol.
bool has_distinct_eigenvalues(const rmat& r, double gap_tol = 1e-9);

/// P A P^T = A.
bool is_automorphism(const Graph& g, const Permutation& sigma);

/// All automorphisms by exhaustive search (n <= 8).
GroupRep brute_aut_group(const Graph& g, Exec exec = Exec::Parallel);

struct DeltaAutResult {
    double delta = 0.0;
    bool is_automorphism = false;
    bool degenerate_spectrum = false;  // precondition of the characterization violated
};

/// delta(P_sigma, R) and the decision delta <= tol.
DeltaAutResult delta_aut_test(const Permutation& sigma, const rmat& r, double tol = 1e-10);

/// Scans every permutation of S_n and returns delta(P_sigma, R) in lexicographic order.
std::vector<double> delta_scan(const rmat& r, Exec exec = Exec::Parallel);

/// Upper-triangle adjacency bits (pairs (i, j), i < j, row-major) packed into an integer.
std::uint32_t adjacency_code(const Graph& g);
Graph graph_from_code(int n, std::uint32_t code);

/// Minimum adjacency code over all vertex relabelings (n <= 8).
std::uint32_t canonical_code(const Graph& g);

/// All non-isomorphic graphs on n vertices by canonical-form deduplication of every labeled graph.
std::vector<Graph> enumerate_graphs(int n = 6, Exec exec = Exec::Parallel);

struct PipelineStage {
    std::string name;
    int count = 0;
};

struct PipelineResult {
    std::vector<PipelineStage> stages;
    std::vector<Graph> survivors;
};

/// Seven structural filters: connected, nontrivial Aut, n divides |Aut|,
/// non-abelian Aut, not circulant, not cospectral with a circulant, |Aut| = n.
PipelineResult filter_pipeline(const std::vector<Graph>& graphs, Exec exec = Exec::Parallel);

/// True when the graph is isomorphic to a circulant graph (Aut contains an n-cycle).
bool is_circulant_graph(const GroupRep& aut);

/// Adjacency spectra of all circulant graphs on n vertices.
std::vector<rvec> circulant_spectra(int n);

struct GevpBasis {
    std::vector<rmat> mats;
};

/// Cyclic shift tau, tau^2, the reflection i -> n-1-i and the transposition (0 2), on n >= 3 vertices.
std::vector<Permutation> cycle_example_generators(int n = 6);

/// Generic five-generator family on n >= 3 vertices: cyclic shift, reflection,
/// transposition (0 1), block swap of the two halves and the 3-cycle (0 1 2).
/// Duplicates (possible for small n) are removed, keeping first occurrences.
std::vector<Permutation> generic_generators(int n);

/// Basis {P_sigma - I}.
GevpBasis difference_basis(const std::vector<Permutation>& perms);

struct GevpSolution {
    rmat a_star;              // unit Frobenius norm
    double lambda_min = 0.0;  // ||[A*, R]||_F^2
    rvec coefficients;        // A* = sum_i c_i B_i
};

/// Minimizes ||[A, R]||_F^2 over unit-Frobenius A in span(basis) via the
/// generalized eigenproblem C v = lambda N v, C_ij = <[B_i,R],[B_j,R]>, N_ij = <B_i,B_j>.
///
/// Conventions for the non-unique parts of the solution: when the smallest
/// eigenvalue is degenerate, A* is the projection of the lowest-index basis
/// element onto that eigenspace; the sign makes the first nonzero entry of A*
/// (row-major) positive.
GevpSolution dc_gevp(const rmat& r, const GevpBasis& basis);

/// Permutation maximizing sum_i A(i, sigma(i)). Among optimal assignments the
/// lexicographically smallest map is returned.
Permutation hungarian_round(const rmat& a);

/// Plain Hungarian minimum-cost assignment; result[i] is the column of row i.
std::vector<int> hungarian_min_cost(const rmat& cost);

struct SeqGevpStep {
    int iteration = 0;
    std::size_t basis_size = 0;
    double lambda_min = 0.0;
    std::optional<Permutation> candidate;
    double delta = 0.0;
    bool accepted = false;
    std::size_t group_order = 1;  // |G_k| after this step
    double max_overlap_with_group = 0.0;  // max |<A*, P_g>| over g in G_k, before the update
    std::string note;
};

struct SubgroupResult {
    std::vector<Permutation> accepted;
    GroupRep elements;
    std::vector<SeqGevpStep> trace;
    int iterations = 0;
    int accepted_steps() const { return static_cast<int>(accepted.size()); }
};

/// Sequential GEVP with group-theoretic deflation.
SubgroupResult sequential_gevp(const rmat& r, const GevpBasis& basis, double tau = 1e-8, int k_max = 20,
                               std::size_t closure_cap = 100000);

}  // namespace adkit
