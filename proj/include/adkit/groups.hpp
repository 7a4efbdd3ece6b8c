#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adkit/rng.hpp"
#include "adkit/types.hpp"

namespace adkit {

/// Bijection on {0, ..., M-1}; map[i] is the image of index i.
///
/// Acting on a vector gives (P x)_i = x[map[i]], so the permutation matrix has
/// P(i, map[i]) = 1 and column j of the Cayley matrix is x[g_j(i)].
struct Permutation {
    std::vector<int> map;

    Permutation() = default;
    explicit Permutation(std::vector<int> m);
    static Permutation identity(int m);
    /// Builds a permutation from disjoint cycles given with 0-based labels.
    static Permutation from_cycles(int m, const std::vector<std::vector<int>>& cycles);

    int size() const { return static_cast<int>(map.size()); }
    bool is_identity() const;
    /// (this * other)(i) = this(other(i)).
    Permutation compose(const Permutation& other) const;
    Permutation inverse() const;
    cvec apply(const cvec& x) const;
    rmat matrix() const;
    int fixed_points() const;

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.map == b.map; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.map < b.map; }
};

/// Returns true when every entry is in range and each index appears exactly once.
bool is_bijection(const std::vector<int>& map);

enum class GroupKind { Trivial, Cyclic, Dihedral, DirectProduct, Symmetric, Conjugated, Custom };

std::string to_string(GroupKind kind);
GroupKind group_kind_from_string(const std::string& name);

/// Finite group realized by M x M unitary actions.
///
/// Permutation groups store index maps only. A conjugated group stores the base
/// permutation group and the unitary U; its k-th element is U^H P_k U.
struct GroupRep {
    GroupKind kind = GroupKind::Trivial;
    int dim = 0;
    std::string name;
    std::vector<Permutation> perms;
    std::vector<int> factors;                 // cyclic factor sizes for DirectProduct
    std::shared_ptr<const GroupRep> base;     // Conjugated only
    cmat unitary;                             // Conjugated only
    bool closure_verified = false;            // false when |G| exceeded the check bound

    std::size_t order() const;
    bool is_permutation() const { return kind != GroupKind::Conjugated; }
    /// Dense matrix of element k.
    cmat element_matrix(std::size_t k) const;
    /// Action of element k on x.
    cvec act(std::size_t k, const cvec& x) const;
};

/// Largest M for which the symmetric group is enumerated explicitly.
constexpr int kSymmetricEnumerationBound = 8;
/// Closure is verified pairwise only for groups up to this order.
constexpr std::size_t kClosureCheckBound = 10000;

GroupRep build_group(GroupKind kind, int m, const std::vector<int>& factors = {});
GroupRep build_group(const std::string& kind, int m, const std::vector<int>& factors = {});

/// Group whose k-th element is U^H * base_k * U.
GroupRep conjugate_group(const GroupRep& base, const cmat& u);

/// Subgroup generated by the given permutations, as an explicit element list.
/// Throws CapacityError (with the partial size) when the closure exceeds cap.
GroupRep closure(const std::vector<Permutation>& generators, int m, std::size_t cap = 100000);

/// Wraps an explicit element list (identity first) as a Custom group.
GroupRep custom_group(std::vector<Permutation> elements, std::string name = "custom");

/// Pairwise closure, identity and inverse check for permutation groups.
bool check_group_axioms(const GroupRep& g);

/// True when all elements of a permutation group commute.
bool is_abelian(const GroupRep& g);

enum class OrderingVariant { Random, SJT, Lehmer, Heap };

std::string to_string(OrderingVariant v);
OrderingVariant ordering_from_string(const std::string& name);

struct OrderingStrategy {
    OrderingVariant variant = OrderingVariant::Random;
    std::uint64_t seed = 0;
    /// Starting permutation for SJT/Lehmer/Heap; drawn from the seed when absent.
    std::optional<Permutation> start;
};

/// Lazy single-consumer generator of permutations of S_M.
class OrderingIterator {
public:
    OrderingIterator(const OrderingStrategy& strategy, int m);
    Permutation next();

private:
    void restart_structured();

    OrderingVariant variant_;
    int m_;
    Rng rng_;
    Permutation start_;
    bool first_ = true;
    // Lehmer and Heap state
    std::vector<int> cur_;
    // Heap counters
    std::vector<int> heap_c_;
    int heap_i_ = 1;
    // SJT state: index arrangement and per-value direction
    std::vector<int> sjt_perm_;
    std::vector<int> sjt_dir_;
};

/// Convenience: the first n permutations of an ordering.
std::vector<Permutation> ordering_sequence(const OrderingStrategy& strategy, int m, std::size_t n);

}  // namespace adkit
