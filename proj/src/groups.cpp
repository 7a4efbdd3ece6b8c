#include "adkit/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace adkit {

// ---------------------------------------------------------------- Permutation

bool is_bijection(const std::vector<int>& map) {
    std::vector<char> seen(map.size(), 0);
    for (int v : map) {
        if (v < 0 || v >= static_cast<int>(map.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Permutation::Permutation(std::vector<int> m) : map(std::move(m)) {
    if (!is_bijection(map)) throw DomainError("permutation map is not a bijection");
}

Permutation Permutation::identity(int m) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int m, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 0);
    for (const auto& c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) v.at(c[k]) = c[(k + 1) % c.size()];
    }
    return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (map[i] != i) return false;
    return true;
}

Permutation Permutation::compose(const Permutation& other) const {
    if (other.size() != size()) throw DimensionError("compose: size mismatch");
    Permutation r;
    r.map.resize(map.size());
    for (int i = 0; i < size(); ++i) r.map[i] = map[other.map[i]];
    return r;
}

Permutation Permutation::inverse() const {
    Permutation r;
    r.map.resize(map.size());
    for (int i = 0; i < size(); ++i) r.map[map[i]] = i;
    return r;
}

cvec Permutation::apply(const cvec& x) const {
    if (x.size() != size()) throw DimensionError("apply: size mismatch");
    cvec y(x.size());
    for (int i = 0; i < size(); ++i) y[i] = x[map[i]];
    return y;
}

rmat Permutation::matrix() const {
    rmat p = rmat::Zero(size(), size());
    for (int i = 0; i < size(); ++i) p(i, map[i]) = 1.0;
    return p;
}

int Permutation::fixed_points() const {
    int c = 0;
    for (int i = 0; i < size(); ++i) c += (map[i] == i);
    return c;
}

// ---------------------------------------------------------------- GroupRep

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::Trivial: return "trivial";
        case GroupKind::Cyclic: return "cyclic";
        case GroupKind::Dihedral: return "dihedral";
        case GroupKind::DirectProduct: return "direct_product";
        case GroupKind::Symmetric: return "symmetric";
        case GroupKind::Conjugated: return "conjugated";
        case GroupKind::Custom: return "custom";
    }
    return "unknown";
}

GroupKind group_kind_from_string(const std::string& name) {
    for (auto k : {GroupKind::Trivial, GroupKind::Cyclic, GroupKind::Dihedral, GroupKind::DirectProduct,
                   GroupKind::Symmetric, GroupKind::Conjugated, GroupKind::Custom}) {
        if (to_string(k) == name) return k;
    }
    throw DomainError("unknown group kind: " + name);
}

std::size_t GroupRep::order() const {
    return kind == GroupKind::Conjugated ? base->order() : perms.size();
}

cmat GroupRep::element_matrix(std::size_t k) const {
    if (kind == GroupKind::Conjugated) {
        return unitary.adjoint() * base->element_matrix(k) * unitary;
    }
    return perms.at(k).matrix().cast<cplx>();
}

cvec GroupRep::act(std::size_t k, const cvec& x) const {
    if (kind == GroupKind::Conjugated) {
        return unitary.adjoint() * base->act(k, unitary * x);
    }
    return perms.at(k).apply(x);
}

namespace {

std::vector<Permutation> cyclic_elements(int m) {
    std::vector<Permutation> out;
    for (int k = 0; k < m; ++k) {
        std::vector<int> v(m);
        for (int i = 0; i < m; ++i) v[i] = (i + k) % m;
        out.emplace_back(std::move(v));
    }
    return out;
}

std::vector<Permutation> dihedral_elements(int m) {
    auto out = cyclic_elements(m);
    for (int k = 0; k < m; ++k) {
        std::vector<int> v(m);
        for (int i = 0; i < m; ++i) v[i] = ((k - i) % m + m) % m;
        out.emplace_back(std::move(v));
    }
    return out;
}

// Index i is the mixed-radix number with the first factor most significant.
std::vector<Permutation> product_elements(const std::vector<int>& factors) {
    int m = 1;
    for (int f : factors) m *= f;
    const int r = static_cast<int>(factors.size());
    std::vector<int> stride(r, 1);
    for (int a = r - 2; a >= 0; --a) stride[a] = stride[a + 1] * factors[a + 1];

    std::vector<Permutation> out;
    for (int g = 0; g < m; ++g) {
        std::vector<int> shift(r);
        for (int a = 0; a < r; ++a) shift[a] = (g / stride[a]) % factors[a];
        std::vector<int> v(m);
        for (int i = 0; i < m; ++i) {
            int j = 0;
            for (int a = 0; a < r; ++a) {
                const int d = (i / stride[a]) % factors[a];
                j += ((d + shift[a]) % factors[a]) * stride[a];
            }
            v[i] = j;
        }
        out.emplace_back(std::move(v));
    }
    return out;
}

}  // namespace

GroupRep build_group(GroupKind kind, int m, const std::vector<int>& factors) {
    if (m < 1) throw DomainError("build_group: M must be >= 1");
    GroupRep g;
    g.kind = kind;
    g.dim = m;
    switch (kind) {
        case GroupKind::Trivial:
            g.perms = {Permutation::identity(m)};
            g.name = "trivial";
            break;
        case GroupKind::Cyclic:
            g.perms = cyclic_elements(m);
            g.name = "Z" + std::to_string(m);
            break;
        case GroupKind::Dihedral:
            // Below M = 3 the reflections coincide with rotations and the action is not faithful.
            if (m < 3) throw DomainError("dihedral group needs M >= 3");
            g.perms = dihedral_elements(m);
            g.name = "D" + std::to_string(m);
            break;
        case GroupKind::DirectProduct: {
            if (factors.empty()) throw DomainError("direct product needs factor sizes");
            int prod = 1;
            for (int f : factors) {
                if (f < 1) throw DomainError("factor sizes must be positive");
                prod *= f;
            }
            if (prod != m) throw DimensionError("product of factor sizes does not equal M");
            g.perms = product_elements(factors);
            g.factors = factors;
            g.name = "Z" + std::to_string(factors[0]);
            for (std::size_t a = 1; a < factors.size(); ++a) g.name += "xZ" + std::to_string(factors[a]);
            break;
        }
        case GroupKind::Symmetric: {
            if (m > kSymmetricEnumerationBound)
                throw CapacityError("symmetric group enumeration bound exceeded", 0);
            auto p = Permutation::identity(m).map;
            do {
                g.perms.emplace_back(p);
            } while (std::next_permutation(p.begin(), p.end()));
            g.name = "S" + std::to_string(m);
            break;
        }
        case GroupKind::Conjugated:
        case GroupKind::Custom:
            throw DomainError("use conjugate_group or custom_group for this kind");
    }
    g.closure_verified = g.order() <= kClosureCheckBound;
    return g;
}

GroupRep build_group(const std::string& kind, int m, const std::vector<int>& factors) {
    return build_group(group_kind_from_string(kind), m, factors);
}

GroupRep conjugate_group(const GroupRep& base, const cmat& u) {
    if (u.rows() != base.dim || u.cols() != base.dim) throw DimensionError("conjugate_group: U has wrong size");
    const double err = (u * u.adjoint() - cmat::Identity(base.dim, base.dim)).norm();
    if (err > 1e-10) throw DomainError("conjugate_group: U is not unitary");
    GroupRep g;
    g.kind = GroupKind::Conjugated;
    g.dim = base.dim;
    g.name = "conj(" + base.name + ")";
    if (base.kind == GroupKind::Conjugated) {
        // U2^H (U1^H P U1) U2 = (U1 U2)^H P (U1 U2)
        g.base = base.base;
        g.unitary = base.unitary * u;
    } else {
        g.base = std::make_shared<const GroupRep>(base);
        g.unitary = u;
    }
    g.closure_verified = base.closure_verified;
    return g;
}

GroupRep closure(const std::vector<Permutation>& generators, int m, std::size_t cap) {
    std::set<std::vector<int>> seen;
    std::vector<Permutation> frontier{Permutation::identity(m)};
    seen.insert(frontier[0].map);
    for (const auto& gen : generators) {
        if (gen.size() != m) throw DimensionError("closure: generator size mismatch");
    }
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& g : frontier) {
            for (const auto& gen : generators) {
                Permutation h = gen.compose(g);
                if (seen.insert(h.map).second) {
                    if (seen.size() > cap) throw CapacityError("closure cap exceeded", seen.size());
                    next.push_back(std::move(h));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Permutation> elems;
    elems.reserve(seen.size());
    for (const auto& v : seen) elems.emplace_back(v);  // lexicographic, identity first
    GroupRep g = custom_group(std::move(elems), "closure");
    return g;
}

GroupRep custom_group(std::vector<Permutation> elements, std::string name) {
    if (elements.empty()) throw DomainError("custom_group: empty element list");
    if (!elements.front().is_identity()) throw DomainError("custom_group: first element must be the identity");
    GroupRep g;
    g.kind = GroupKind::Custom;
    g.dim = elements.front().size();
    g.perms = std::move(elements);
    g.name = std::move(name);
    g.closure_verified = g.order() <= kClosureCheckBound;
    return g;
}

bool check_group_axioms(const GroupRep& g) {
    if (!g.is_permutation()) return false;
    if (g.perms.empty() || !g.perms.front().is_identity()) return false;
    std::set<std::vector<int>> all;
    for (const auto& p : g.perms) all.insert(p.map);
    if (all.size() != g.perms.size()) return false;
    for (const auto& p : g.perms) {
        if (!all.count(p.inverse().map)) return false;
        for (const auto& q : g.perms)
            if (!all.count(p.compose(q).map)) return false;
    }
    return true;
}

bool is_abelian(const GroupRep& g) {
    for (std::size_t a = 0; a < g.perms.size(); ++a)
        for (std::size_t b = a + 1; b < g.perms.size(); ++b)
            if (!(g.perms[a].compose(g.perms[b]) == g.perms[b].compose(g.perms[a]))) return false;
    return true;
}

// ---------------------------------------------------------------- orderings

std::string to_string(OrderingVariant v) {
    switch (v) {
        case OrderingVariant::Random: return "Random";
        case OrderingVariant::SJT: return "SJT";
        case OrderingVariant::Lehmer: return "Lehmer";
        case OrderingVariant::Heap: return "Heap";
    }
    return "unknown";
}

OrderingVariant ordering_from_string(const std::string& name) {
    for (auto v : {OrderingVariant::Random, OrderingVariant::SJT, OrderingVariant::Lehmer, OrderingVariant::Heap}) {
        std::string a = to_string(v), b = name;
        std::transform(a.begin(), a.end(), a.begin(), ::tolower);
        std::transform(b.begin(), b.end(), b.begin(), ::tolower);
        if (a == b) return v;
    }
    throw DomainError("unknown ordering strategy: " + name);
}

OrderingIterator::OrderingIterator(const OrderingStrategy& strategy, int m)
    : variant_(strategy.variant), m_(m), rng_(strategy.seed, 0x5eed) {
    if (m < 2) throw DomainError("ordering_iterator: M must be >= 2");
    if (variant_ != OrderingVariant::Random) {
        if (strategy.start) {
            if (strategy.start->size() != m) throw DimensionError("ordering start has wrong size");
            start_ = *strategy.start;
        } else {
            start_ = Permutation(rng_.permutation(m));
        }
        restart_structured();
    }
}

void OrderingIterator::restart_structured() {
    first_ = true;
    cur_ = start_.map;
    heap_c_.assign(m_, 0);
    heap_i_ = 1;
    sjt_perm_.resize(m_);
    std::iota(sjt_perm_.begin(), sjt_perm_.end(), 0);
    sjt_dir_.assign(m_, -1);
}

Permutation OrderingIterator::next() {
    if (variant_ == OrderingVariant::Random) return Permutation(rng_.permutation(m_));

    if (first_) {
        first_ = false;
        return start_;
    }
    switch (variant_) {
        case OrderingVariant::Lehmer:
            // Lexicographic successor; wraps to the smallest permutation after the largest.
            std::next_permutation(cur_.begin(), cur_.end());
            return Permutation(cur_);
        case OrderingVariant::Heap: {
            // Iterative Heap's algorithm: one swap per emitted permutation.
            while (heap_i_ < m_) {
                if (heap_c_[heap_i_] < heap_i_) {
                    if (heap_i_ % 2 == 0)
                        std::swap(cur_[0], cur_[heap_i_]);
                    else
                        std::swap(cur_[heap_c_[heap_i_]], cur_[heap_i_]);
                    ++heap_c_[heap_i_];
                    heap_i_ = 1;
                    return Permutation(cur_);
                }
                heap_c_[heap_i_] = 0;
                ++heap_i_;
            }
            restart_structured();
            first_ = false;
            return start_;
        }
        case OrderingVariant::SJT: {
            // Move the largest mobile value one step in its direction, then
            // reverse the direction of every larger value.
            int mobile = -1, pos = -1;
            for (int i = 0; i < m_; ++i) {
                const int v = sjt_perm_[i];
                const int j = i + sjt_dir_[v];
                if (j >= 0 && j < m_ && sjt_perm_[j] < v && v > mobile) {
                    mobile = v;
                    pos = i;
                }
            }
            if (mobile < 0) {
                restart_structured();
                first_ = false;
                return start_;
            }
            std::swap(sjt_perm_[pos], sjt_perm_[pos + sjt_dir_[mobile]]);
            for (int v = mobile + 1; v < m_; ++v) sjt_dir_[v] = -sjt_dir_[v];
            std::vector<int> out(m_);
            for (int i = 0; i < m_; ++i) out[i] = start_.map[sjt_perm_[i]];
            return Permutation(std::move(out));
        }
        case OrderingVariant::Random: break;
    }
    return start_;
}

std::vector<Permutation> ordering_sequence(const OrderingStrategy& strategy, int m, std::size_t n) {
    OrderingIterator it(strategy, m);
    std::vector<Permutation> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(it.next());
    return out;
}

}  // namespace adkit
