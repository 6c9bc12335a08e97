#ifndef GREENRING_GROUPS_HPP
#define GREENRING_GROUPS_HPP

/// Finite permutation groups: closure enumeration, conjugacy classes,
/// p-regular parts and the induced class fusion, abelian invariants, and
/// constructors for the named families used by the command line.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "greenring/error.hpp"
#include "greenring/exactmath.hpp"

namespace greenring {

inline constexpr std::size_t kGroupOrderCap = 100000;

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        detail::require(!images_.empty(), "Permutation: degree must be positive");
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            detail::require(v >= 0 && v < static_cast<int>(images_.size()) && !seen[static_cast<std::size_t>(v)],
                            "Permutation: images do not form a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int degree) {
        std::vector<int> v(static_cast<std::size_t>(degree));
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int apply(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (apply(i) != i) return false;
        return true;
    }

    /// Composition acting on the left: (a*b)(x) = a(b(x)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        detail::require(a.degree() == b.degree(), "Permutation: degree mismatch");
        std::vector<int> v(a.images_.size());
        for (int i = 0; i < a.degree(); ++i) v[static_cast<std::size_t>(i)] = a.apply(b.apply(i));
        return Permutation(std::move(v));
    }

    Permutation inverse() const {
        std::vector<int> v(images_.size());
        for (int i = 0; i < degree(); ++i) v[static_cast<std::size_t>(apply(i))] = i;
        return Permutation(std::move(v));
    }

    /// Order as the lcm of the cycle lengths.
    std::int64_t order() const {
        std::vector<bool> seen(images_.size(), false);
        std::int64_t result = 1;
        for (int start = 0; start < degree(); ++start) {
            if (seen[static_cast<std::size_t>(start)]) continue;
            std::int64_t len = 0;
            int i = start;
            do {
                seen[static_cast<std::size_t>(i)] = true;
                i = apply(i);
                ++len;
            } while (i != start);
            result = std::lcm(result, len);
        }
        return result;
    }

    Permutation pow(std::int64_t k) const {
        const std::int64_t o = order();
        k %= o;
        if (k < 0) k += o;
        Permutation acc = identity(degree()), base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.images_ < b.images_;
    }

    /// Disjoint-cycle rendering, e.g. "(0,1)(2,3)"; the identity prints "()".
    std::string to_cycle_string() const {
        std::vector<bool> seen(images_.size(), false);
        std::string out;
        for (int start = 0; start < degree(); ++start) {
            if (seen[static_cast<std::size_t>(start)] || apply(start) == start) continue;
            out += "(";
            int i = start;
            bool first = true;
            do {
                if (!first) out += ",";
                out += std::to_string(i);
                seen[static_cast<std::size_t>(i)] = true;
                i = apply(i);
                first = false;
            } while (i != start);
            out += ")";
        }
        return out.empty() ? "()" : out;
    }

private:
    std::vector<int> images_;
};

/// A conjugacy class; the representative is the lexicographically smallest
/// member, so class data is reproducible run to run.
struct ConjClass {
    int index = 0;
    Permutation representative = Permutation::identity(1);
    std::int64_t size = 0;
    std::int64_t element_order = 1;
};

// ---------------------------------------------------------------------------
// PermGroup
// ---------------------------------------------------------------------------

class PermGroup {
public:
    /// Breadth-first closure of the generators.  Elements end up sorted
    /// lexicographically and conjugacy classes are computed immediately, so
    /// all indices below are deterministic.
    static PermGroup enumerate(int degree, std::vector<Permutation> generators,
                               std::size_t cap = kGroupOrderCap) {
        detail::require(degree >= 1, "enumerate: degree must be positive");
        for (const auto& g : generators)
            detail::require(g.degree() == degree, "enumerate: generator degree mismatch");

        PermGroup G;
        G.degree_ = degree;
        G.generators_ = std::move(generators);

        std::set<Permutation> seen;
        std::deque<Permutation> queue;
        seen.insert(Permutation::identity(degree));
        queue.push_back(Permutation::identity(degree));
        while (!queue.empty()) {
            Permutation x = std::move(queue.front());
            queue.pop_front();
            for (const auto& g : G.generators_) {
                Permutation y = x * g;
                if (seen.insert(y).second) {
                    if (seen.size() > cap)
                        throw SizeError("enumerate: group order exceeds the cap of " +
                                        std::to_string(cap) + " elements");
                    queue.push_back(std::move(y));
                }
            }
        }
        G.elements_.assign(seen.begin(), seen.end());  // sorted by std::set
        G.compute_classes();
        return G;
    }

    int degree() const { return degree_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
    const std::vector<Permutation>& elements() const { return elements_; }
    const std::vector<Permutation>& generators() const { return generators_; }
    const std::vector<ConjClass>& classes() const { return classes_; }

    int element_index(const Permutation& g) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
        detail::require(it != elements_.end() && *it == g, "element does not belong to the group");
        return static_cast<int>(it - elements_.begin());
    }

    int class_of(const Permutation& g) const {
        return class_index_[static_cast<std::size_t>(element_index(g))];
    }

    bool is_abelian() const {
        for (std::size_t i = 0; i < generators_.size(); ++i)
            for (std::size_t j = i + 1; j < generators_.size(); ++j)
                if (generators_[i] * generators_[j] != generators_[j] * generators_[i])
                    return false;
        return true;
    }

    /// The exponent: lcm of the element orders.
    std::int64_t exponent() const {
        std::int64_t e = 1;
        for (const auto& c : classes_) e = std::lcm(e, c.element_order);
        return e;
    }

private:
    void compute_classes() {
        const std::size_t n = elements_.size();
        class_index_.assign(n, -1);
        struct RawClass {
            std::vector<int> members;  // element indices, ascending
            std::int64_t element_order;
        };
        std::vector<RawClass> raw;
        for (std::size_t start = 0; start < n; ++start) {
            if (class_index_[start] != -1) continue;
            const int id = static_cast<int>(raw.size());
            RawClass rc;
            rc.element_order = elements_[start].order();
            std::deque<int> queue{static_cast<int>(start)};
            class_index_[start] = id;
            while (!queue.empty()) {
                int xi = queue.front();
                queue.pop_front();
                rc.members.push_back(xi);
                for (const auto& a : generators_) {
                    Permutation y = a * elements_[static_cast<std::size_t>(xi)] * a.inverse();
                    int yi = element_index(y);
                    if (class_index_[static_cast<std::size_t>(yi)] == -1) {
                        class_index_[static_cast<std::size_t>(yi)] = id;
                        queue.push_back(yi);
                    }
                }
            }
            std::sort(rc.members.begin(), rc.members.end());
            raw.push_back(std::move(rc));
        }
        // order classes by (element order, size, lexicographically smallest member)
        std::vector<int> perm(raw.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            const auto& A = raw[static_cast<std::size_t>(a)];
            const auto& B = raw[static_cast<std::size_t>(b)];
            if (A.element_order != B.element_order) return A.element_order < B.element_order;
            if (A.members.size() != B.members.size()) return A.members.size() < B.members.size();
            return elements_[static_cast<std::size_t>(A.members.front())] <
                   elements_[static_cast<std::size_t>(B.members.front())];
        });
        classes_.clear();
        classes_.reserve(raw.size());
        std::vector<int> relabel(raw.size());
        for (std::size_t new_id = 0; new_id < perm.size(); ++new_id) {
            const auto& rc = raw[static_cast<std::size_t>(perm[new_id])];
            relabel[static_cast<std::size_t>(perm[new_id])] = static_cast<int>(new_id);
            ConjClass c;
            c.index = static_cast<int>(new_id);
            c.representative = elements_[static_cast<std::size_t>(rc.members.front())];
            c.size = static_cast<std::int64_t>(rc.members.size());
            c.element_order = rc.element_order;
            classes_.push_back(std::move(c));
        }
        for (auto& idx : class_index_) idx = relabel[static_cast<std::size_t>(idx)];
    }

    int degree_ = 1;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
    std::vector<int> class_index_;
    std::vector<ConjClass> classes_;
};

// ---------------------------------------------------------------------------
// p-regular parts and class fusion
// ---------------------------------------------------------------------------

/// The unique power of g with order coprime to p such that the complementary
/// factor has p-power order.  Writes |g| = p^a * m and returns g^(p^a * t)
/// with p^a * t = 1 (mod m).
inline Permutation p_regular_part(const Permutation& g, std::int64_t p) {
    detail::require(is_prime(p), "p_regular_part: p must be prime");
    const std::int64_t o = g.order();
    const auto [a, pa] = p_adic_valuation(o, p);
    (void)a;
    const std::int64_t m = o / pa;
    if (m == 1) return Permutation::identity(g.degree());
    const std::int64_t t = mod_inverse(pa % m, m);
    return g.pow(pa * t);
}

/// The class-level fusion c -> class of the p-regular part of c.  Total,
/// idempotent, and the identity on p-regular classes.
inline std::vector<int> fusion_map(const PermGroup& G, std::int64_t p) {
    std::vector<int> out;
    out.reserve(G.classes().size());
    for (const auto& c : G.classes()) out.push_back(G.class_of(p_regular_part(c.representative, p)));
    return out;
}

/// Primary decomposition of a finite abelian group: the multiset of prime
/// power orders of its cyclic factors, ascending.
inline std::vector<std::int64_t> abelian_invariants(const PermGroup& G) {
    detail::require(G.is_abelian(), "abelian_invariants: group is not abelian");
    std::vector<std::int64_t> out;
    for (const auto& [p, a] : factorize(G.order())) {
        // census: N_k = #elements killed by p^k; log jumps give the factor counts
        std::vector<std::int64_t> logs;  // logs[k] = log_p #{g : g^(p^k) = 1}
        for (int k = 0; k <= a; ++k) {
            std::int64_t pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            std::int64_t count = 0;
            for (const auto& g : G.elements())
                if (g.pow(pk).is_identity()) ++count;
            std::int64_t log = 0, c = count;
            while (c % p == 0) { c /= p; ++log; }
            detail::check_internal(c == 1, "abelian_invariants: census count is not a p-power");
            logs.push_back(log);
        }
        for (int k = 1; k <= a; ++k) {
            std::int64_t next = (k + 1 <= a) ? logs[static_cast<std::size_t>(k + 1)] : logs[static_cast<std::size_t>(k)];
            std::int64_t count_k = (logs[static_cast<std::size_t>(k)] - logs[static_cast<std::size_t>(k - 1)]) -
                                   (next - logs[static_cast<std::size_t>(k)]);
            std::int64_t pk = 1;
            for (int i = 0; i < k; ++i) pk *= p;
            for (std::int64_t i = 0; i < count_k; ++i) out.push_back(pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Named families and the descriptor grammar
// ---------------------------------------------------------------------------

namespace detail {

struct GeneratorSet {
    int degree = 1;
    std::vector<std::vector<int>> images;  // generator image vectors
};

inline GeneratorSet cyclic_generators(int k) {
    require(k >= 1, "cyclic: order must be positive");
    GeneratorSet out;
    out.degree = k;
    if (k > 1) {
        std::vector<int> rot(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % k;
        out.images.push_back(std::move(rot));
    }
    return out;
}

inline GeneratorSet symmetric_generators(int k) {
    require(k >= 1, "symmetric: degree must be positive");
    GeneratorSet out;
    out.degree = k;
    if (k >= 2) {
        std::vector<int> swap01(static_cast<std::size_t>(k));
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        out.images.push_back(std::move(swap01));
    }
    if (k >= 3) {
        std::vector<int> rot(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) rot[static_cast<std::size_t>(i)] = (i + 1) % k;
        out.images.push_back(std::move(rot));
    }
    return out;
}

inline GeneratorSet alternating_generators(int k) {
    require(k >= 1, "alternating: degree must be positive");
    GeneratorSet out;
    out.degree = k;
    if (k >= 3) {
        std::vector<int> three(static_cast<std::size_t>(k));
        std::iota(three.begin(), three.end(), 0);
        three[0] = 1; three[1] = 2; three[2] = 0;
        out.images.push_back(std::move(three));
    }
    if (k >= 4) {
        std::vector<int> big(static_cast<std::size_t>(k));
        std::iota(big.begin(), big.end(), 0);
        if (k % 2 == 1) {
            for (int i = 0; i < k; ++i) big[static_cast<std::size_t>(i)] = (i + 1) % k;
        } else {
            for (int i = 1; i < k; ++i) big[static_cast<std::size_t>(i)] = 1 + (i % (k - 1));
        }
        out.images.push_back(std::move(big));
    }
    return out;
}

/// Dihedral group of order m as permutations.  For m >= 6 this is the
/// symmetry group of the (m/2)-gon; the two degenerate small cases are
/// realized on extra points so the action stays faithful.
inline GeneratorSet dihedral_generators(int m) {
    if (m < 2 || m % 2 != 0)
        throw ParseError("group descriptor: dihedral order must be an even integer >= 2");
    const int k = m / 2;
    if (k == 1) return cyclic_generators(2);
    if (k == 2) {  // Klein four group on 4 points
        GeneratorSet out;
        out.degree = 4;
        out.images.push_back({1, 0, 2, 3});
        out.images.push_back({0, 1, 3, 2});
        return out;
    }
    GeneratorSet out;
    out.degree = k;
    std::vector<int> rot(static_cast<std::size_t>(k)), refl(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        rot[static_cast<std::size_t>(i)] = (i + 1) % k;
        refl[static_cast<std::size_t>(i)] = (k - i) % k;
    }
    out.images.push_back(std::move(rot));
    out.images.push_back(std::move(refl));
    return out;
}

inline GeneratorSet direct_product(const GeneratorSet& a, const GeneratorSet& b) {
    GeneratorSet out;
    out.degree = a.degree + b.degree;
    for (const auto& g : a.images) {
        std::vector<int> v(static_cast<std::size_t>(out.degree));
        for (int i = 0; i < a.degree; ++i) v[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(i)];
        for (int i = 0; i < b.degree; ++i) v[static_cast<std::size_t>(a.degree + i)] = a.degree + i;
        out.images.push_back(std::move(v));
    }
    for (const auto& g : b.images) {
        std::vector<int> v(static_cast<std::size_t>(out.degree));
        for (int i = 0; i < a.degree; ++i) v[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < b.degree; ++i)
            v[static_cast<std::size_t>(a.degree + i)] = a.degree + g[static_cast<std::size_t>(i)];
        out.images.push_back(std::move(v));
    }
    return out;
}

inline GeneratorSet parse_family_atom(const std::string& atom) {
    if (atom.size() < 2) throw ParseError("group descriptor: bad atom '" + atom + "'");
    const char family = atom[0];
    int k = 0;
    for (std::size_t i = 1; i < atom.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(atom[i])))
            throw ParseError("group descriptor: bad atom '" + atom + "'");
        k = k * 10 + (atom[i] - '0');
        if (k > 1000000) throw ParseError("group descriptor: parameter too large in '" + atom + "'");
    }
    if (k == 0) throw ParseError("group descriptor: bad atom '" + atom + "'");
    switch (family) {
        case 'C': return cyclic_generators(k);
        case 'S': return symmetric_generators(k);
        case 'A': return alternating_generators(k);
        case 'D': return dihedral_generators(k);
        default: throw ParseError(std::string("group descriptor: unknown family '") + family + "'");
    }
}

/// Parses "perm:[(0,1,2),(0,1)(2,3)]": 0-based cycle notation, one
/// comma-separated generator list in brackets.
inline GeneratorSet parse_permutation_descriptor(const std::string& body) {
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ParseError("group descriptor: perm generators must be bracketed");
    const std::string inner = body.substr(1, body.size() - 2);

    // split generators on commas outside parentheses
    std::vector<std::string> gen_strings;
    std::string current;
    int depth = 0;
    for (char ch : inner) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw ParseError("group descriptor: unbalanced parentheses");
        if (ch == ',' && depth == 0) {
            gen_strings.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            current += ch;
        }
    }
    if (depth != 0) throw ParseError("group descriptor: unbalanced parentheses");
    if (!current.empty()) gen_strings.push_back(current);

    std::vector<std::vector<std::vector<int>>> generators;  // generator -> cycles -> points
    int max_point = 0;
    for (const auto& gs : gen_strings) {
        std::vector<std::vector<int>> cycles;
        std::size_t pos = 0;
        while (pos < gs.size()) {
            if (gs[pos] != '(') throw ParseError("group descriptor: expected '(' in '" + gs + "'");
            std::size_t close = gs.find(')', pos);
            if (close == std::string::npos)
                throw ParseError("group descriptor: missing ')' in '" + gs + "'");
            std::vector<int> cycle;
            std::string num;
            for (std::size_t i = pos + 1; i <= close; ++i) {
                if (i == close || gs[i] == ',') {
                    if (num.empty()) throw ParseError("group descriptor: empty point in '" + gs + "'");
                    cycle.push_back(std::stoi(num));
                    num.clear();
                } else if (std::isdigit(static_cast<unsigned char>(gs[i]))) {
                    num += gs[i];
                } else {
                    throw ParseError("group descriptor: bad character in cycle '" + gs + "'");
                }
            }
            for (int pt : cycle) max_point = std::max(max_point, pt);
            cycles.push_back(std::move(cycle));
            pos = close + 1;
        }
        generators.push_back(std::move(cycles));
    }

    GeneratorSet out;
    out.degree = max_point + 1;
    for (const auto& cycles : generators) {
        std::vector<int> v(static_cast<std::size_t>(out.degree));
        std::iota(v.begin(), v.end(), 0);
        std::vector<bool> moved(static_cast<std::size_t>(out.degree), false);
        for (const auto& cycle : cycles) {
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
                if (moved[static_cast<std::size_t>(from)])
                    throw ParseError("group descriptor: cycles are not disjoint");
                moved[static_cast<std::size_t>(from)] = true;
                v[static_cast<std::size_t>(from)] = to;
            }
        }
        out.images.push_back(std::move(v));
    }
    return out;
}

}  // namespace detail

/// Builds a group from a descriptor: `A4`, `S5`, `C6`, `D8` (dihedral of
/// order 8), direct products like `C2xC4`, or explicit generators in cycle
/// notation, `perm:[(0,1,2),(0,1)(2,3)]`.
inline PermGroup make_group(const std::string& descriptor) {
    std::string s;
    for (char ch : descriptor)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("group descriptor: empty");

    detail::GeneratorSet gens;
    if (s.rfind("perm:", 0) == 0) {
        gens = detail::parse_permutation_descriptor(s.substr(5));
    } else {
        std::size_t pos = 0;
        bool first = true;
        while (pos < s.size()) {
            std::size_t next = s.find('x', pos);
            std::string atom = s.substr(pos, next == std::string::npos ? next : next - pos);
            detail::GeneratorSet factor = detail::parse_family_atom(atom);
            gens = first ? std::move(factor) : detail::direct_product(gens, factor);
            first = false;
            if (next == std::string::npos) break;
            pos = next + 1;
            if (pos == s.size()) throw ParseError("group descriptor: trailing 'x'");
        }
    }
    std::vector<Permutation> generators;
    generators.reserve(gens.images.size());
    for (auto& v : gens.images) generators.emplace_back(std::move(v));
    return PermGroup::enumerate(gens.degree, std::move(generators));
}

}  // namespace greenring

#endif  // GREENRING_GROUPS_HPP
