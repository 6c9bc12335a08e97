#ifndef GREENRING_CHARTABLE_HPP
#define GREENRING_CHARTABLE_HPP

/// Ordinary (complex) character tables over Z[xi]: computation for permutation
/// groups by the Burnside--Dixon method, JSON ingestion/export, conductor
/// embedding, and exact orthogonality verification.
///
/// The modular part of Dixon's algorithm is followed by an exact verification
/// of both orthogonality relations in Z[xi_n], so a table that leaves this
/// module is correct no matter what the mod-q internals did.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "greenring/cyclotomic.hpp"
#include "greenring/error.hpp"
#include "greenring/exactmath.hpp"
#include "greenring/groups.hpp"

namespace greenring {

inline constexpr std::int64_t kCharacterTableOrderCap = 10000;

/// Class data shared between group-backed and file-backed tables.
struct TableClass {
    std::int64_t size = 1;
    std::int64_t element_order = 1;
    friend bool operator==(const TableClass& a, const TableClass& b) {
        return a.size == b.size && a.element_order == b.element_order;
    }
};

class CharacterTable {
public:
    CharacterTable(std::int64_t order, std::int64_t exponent, int conductor,
                   std::vector<TableClass> classes,
                   std::vector<std::vector<CyclotomicInt>> values)
        : order_(order), exponent_(exponent), conductor_(conductor),
          classes_(std::move(classes)), values_(std::move(values)) {
        detail::require(order_ >= 1, "CharacterTable: order must be positive");
        detail::require(conductor_ >= 1, "CharacterTable: conductor must be positive");
        const std::size_t s = classes_.size();
        detail::require(s >= 1, "CharacterTable: need at least one class");
        detail::require(values_.size() == s, "CharacterTable: values must be s x s");
        for (const auto& row : values_) {
            detail::require(row.size() == s, "CharacterTable: values must be s x s");
            for (const auto& v : row)
                detail::require(v.conductor() == conductor_,
                                "CharacterTable: value conductor mismatch");
        }
    }

    std::int64_t order() const { return order_; }
    std::int64_t exponent() const { return exponent_; }
    int conductor() const { return conductor_; }
    std::size_t s() const { return classes_.size(); }
    const std::vector<TableClass>& classes() const { return classes_; }
    const CyclotomicInt& value(std::size_t character, std::size_t cls) const {
        return values_[character][cls];
    }
    const std::vector<std::vector<CyclotomicInt>>& values() const { return values_; }

    /// Degree of the i-th character, a positive rational integer.
    BigInt degree(std::size_t character) const {
        return values_[character][0].rational_value();
    }

    friend bool operator==(const CharacterTable& a, const CharacterTable& b) {
        return a.order_ == b.order_ && a.exponent_ == b.exponent_ &&
               a.conductor_ == b.conductor_ && a.classes_ == b.classes_ &&
               a.values_ == b.values_;
    }

private:
    std::int64_t order_;
    std::int64_t exponent_;
    int conductor_;
    std::vector<TableClass> classes_;
    std::vector<std::vector<CyclotomicInt>> values_;
};

namespace detail {

/// Empty string when every table invariant holds, else a diagnostic.
/// Checks: identity class first, trivial character first, positive integral
/// degrees, sum of squared degrees, both orthogonality relations (exactly,
/// in Z[xi]), exponent consistency, and the canonical character order.
inline std::string table_invariant_violation(const CharacterTable& t) {
    const std::size_t s = t.s();
    const std::int64_t n = t.order();

    if (t.classes()[0].size != 1 || t.classes()[0].element_order != 1)
        return "class of the identity must come first";
    std::int64_t size_sum = 0, exponent = 1;
    for (const auto& c : t.classes()) {
        if (c.size < 1 || n % c.size != 0) return "class sizes must divide the group order";
        if (c.element_order < 1 || n % c.element_order != 0)
            return "element orders must divide the group order";
        size_sum += c.size;
        exponent = std::lcm(exponent, c.element_order);
    }
    if (size_sum != n) return "class sizes must sum to the group order";
    if (exponent != t.exponent()) return "exponent must be the lcm of the element orders";
    if (n % t.exponent() != 0) return "exponent must divide the group order";

    for (std::size_t c = 0; c < s; ++c)
        if (t.value(0, c) != CyclotomicInt::integer(t.conductor(), 1))
            return "first character must be the trivial character";

    BigInt degree_square_sum = 0;
    for (std::size_t i = 0; i < s; ++i) {
        const CyclotomicInt& d = t.value(i, 0);
        if (!d.is_rational() || d.rational_value() <= 0)
            return "character degrees must be positive rational integers";
        degree_square_sum += d.rational_value() * d.rational_value();
    }
    if (degree_square_sum != n) return "squared character degrees must sum to the group order";

    std::vector<std::vector<CyclotomicInt>> conj_values;
    conj_values.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<CyclotomicInt> row;
        row.reserve(s);
        for (std::size_t c = 0; c < s; ++c) row.push_back(conjugate(t.value(i, c)));
        conj_values.push_back(std::move(row));
    }
    const BigInt one = 1;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) {
            CyclotomicInt sum(t.conductor());
            for (std::size_t c = 0; c < s; ++c)
                sum.add_scaled(BigInt(t.classes()[c].size), t.value(i, c) * conj_values[j][c]);
            if (sum != CyclotomicInt::integer(t.conductor(), i == j ? n : 0))
                return "row orthogonality fails";
        }
    for (std::size_t c = 0; c < s; ++c)
        for (std::size_t d = c; d < s; ++d) {
            CyclotomicInt sum(t.conductor());
            for (std::size_t i = 0; i < s; ++i)
                sum.add_scaled(one, t.value(i, c) * conj_values[i][d]);
            const BigInt expected = (c == d) ? BigInt(n / t.classes()[c].size) : BigInt(0);
            if (sum != CyclotomicInt::integer(t.conductor(), expected))
                return "column orthogonality fails";
        }

    // canonical order: trivial first, then ascending (degree, lex value tuple).
    // The order is defined at conductor n, so it is only checked on tables in
    // that canonical state.
    if (t.conductor() != n) return "";
    for (std::size_t i = 2; i < s; ++i) {
        const BigInt da = t.degree(i - 1), db = t.degree(i);
        bool ordered = da < db;
        if (da == db) {
            bool less = false, greater = false;
            for (std::size_t c = 0; c < s && !less && !greater; ++c) {
                if (lex_less(t.value(i - 1, c), t.value(i, c))) less = true;
                else if (lex_less(t.value(i, c), t.value(i - 1, c))) greater = true;
            }
            ordered = less;
        }
        if (!ordered) return "characters are not in canonical order";
    }
    return "";
}

inline CharacterTable embed_table(const CharacterTable& t, int target) {
    std::vector<std::vector<CyclotomicInt>> values;
    values.reserve(t.s());
    for (const auto& row : t.values()) {
        std::vector<CyclotomicInt> out;
        out.reserve(row.size());
        for (const auto& v : row) out.push_back(embed(v, target));
        values.push_back(std::move(out));
    }
    return CharacterTable(t.order(), t.exponent(), target, t.classes(), std::move(values));
}

}  // namespace detail

/// Re-expresses all values at the conductor n = |G| (or any multiple of the
/// current conductor) and re-verifies orthogonality.
inline CharacterTable embed_conductor(const CharacterTable& t, int target = 0) {
    if (target == 0) target = static_cast<int>(t.order());
    detail::require(target >= 1 && target % t.conductor() == 0,
                    "embed_conductor: current conductor must divide the target");
    CharacterTable out = detail::embed_table(t, target);
    const std::string why = detail::table_invariant_violation(out);
    detail::require(why.empty(), "embed_conductor: " + why);
    return out;
}

// ---------------------------------------------------------------------------
// Burnside--Dixon
// ---------------------------------------------------------------------------

namespace detail {

/// Row-reduces in place over F_q; returns the pivot column of each row.
inline std::vector<int> rref(std::vector<std::vector<std::int64_t>>& rows, std::int64_t q) {
    std::vector<int> pivots;
    std::size_t r = 0;
    const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const std::int64_t inv = mod_inverse(rows[r][col], q);
        for (auto& x : rows[r]) x = mod_mul(x, inv, q);
        for (std::size_t other = 0; other < rows.size(); ++other) {
            if (other == r || rows[other][col] == 0) continue;
            const std::int64_t f = rows[other][col];
            for (std::size_t c = 0; c < ncols; ++c)
                rows[other][c] = ((rows[other][c] - mod_mul(f, rows[r][c], q)) % q + q) % q;
        }
        pivots.push_back(static_cast<int>(col));
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

/// Basis of the kernel of a square matrix over F_q.
inline std::vector<std::vector<std::int64_t>> kernel_basis_mod(
    std::vector<std::vector<std::int64_t>> m, std::int64_t q) {
    const std::size_t dim = m.size();
    std::vector<int> pivots = rref(m, q);
    std::vector<bool> is_pivot(dim, false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<std::int64_t>> kernel;
    for (std::size_t free_col = 0; free_col < dim; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<std::int64_t> v(dim, 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = (q - m[r][free_col]) % q;
        kernel.push_back(std::move(v));
    }
    return kernel;
}

struct DixonContext {
    const PermGroup* group;
    std::int64_t n, e, q;
    std::size_t s;
    std::vector<std::vector<int>> class_members;           // element indices per class
    std::vector<int> inverse_class;                        // class of rep^-1
    std::vector<std::vector<int>> power_class;             // [k][l] class of rep_k^l
    std::vector<std::vector<std::vector<std::int64_t>>> class_matrix;  // A_i mod q
};

inline std::int64_t choose_dixon_prime(std::int64_t n, std::int64_t e) {
    std::int64_t root = 1;
    while (root * root < n) ++root;  // ceil(sqrt(n))
    std::int64_t q = 2 * root + 1;   // scan the progression 1 mod e from here
    while (q % e != 1 % e || !is_prime(q)) ++q;
    return q;
}

inline std::int64_t primitive_root_of_unity(std::int64_t q, std::int64_t e) {
    const auto q1_factors = factorize(q - 1);
    for (std::int64_t g = 2; g < q; ++g) {
        bool generator = true;
        for (const auto& [r, exp] : q1_factors) {
            (void)exp;
            if (mod_pow(g, (q - 1) / r, q) == 1) { generator = false; break; }
        }
        if (generator) return mod_pow(g, (q - 1) / e, q);
    }
    throw InternalError("no generator found mod the Dixon prime");
}

/// Common eigenvectors of the class matrices, each normalized so the
/// coordinate at the identity class is 1.
inline std::vector<std::vector<std::int64_t>> split_eigenvectors(const DixonContext& ctx) {
    const std::int64_t q = ctx.q;
    const std::size_t s = ctx.s;
    std::vector<std::vector<std::vector<std::int64_t>>> subspaces;
    {
        std::vector<std::vector<std::int64_t>> full;
        for (std::size_t i = 0; i < s; ++i) {
            std::vector<std::int64_t> v(s, 0);
            v[i] = 1;
            full.push_back(std::move(v));
        }
        subspaces.push_back(std::move(full));
    }
    for (std::size_t i = 1; i < s; ++i) {
        const auto& A = ctx.class_matrix[i];
        std::vector<std::vector<std::vector<std::int64_t>>> next;
        for (auto& basis : subspaces) {
            const std::size_t dim = basis.size();
            if (dim == 1) {
                next.push_back(std::move(basis));
                continue;
            }
            std::vector<int> pivots = rref(basis, q);
            // restriction R of A to the subspace: R[.][t] = A*basis_t in basis coords
            std::vector<std::vector<std::int64_t>> R(dim, std::vector<std::int64_t>(dim, 0));
            for (std::size_t t = 0; t < dim; ++t) {
                std::vector<std::int64_t> w(s, 0);
                for (std::size_t j = 0; j < s; ++j) {
                    std::int64_t acc = 0;
                    for (std::size_t k = 0; k < s; ++k)
                        acc = (acc + mod_mul(A[j][k], basis[t][k], q)) % q;
                    w[j] = acc;
                }
                std::vector<std::int64_t> residual = w;
                for (std::size_t r = 0; r < dim; ++r) {
                    const std::int64_t c = w[static_cast<std::size_t>(pivots[r])];
                    R[r][t] = c;
                    if (c == 0) continue;
                    for (std::size_t col = 0; col < s; ++col)
                        residual[col] = ((residual[col] - mod_mul(c, basis[r][col], q)) % q + q) % q;
                }
                for (std::int64_t x : residual)
                    check_internal(x == 0, "class matrix does not preserve a split subspace");
            }
            // scan every scalar of F_q for eigenspaces of the restriction
            std::size_t found = 0;
            for (std::int64_t lambda = 0; lambda < q && found < dim; ++lambda) {
                auto shifted = R;
                for (std::size_t t = 0; t < dim; ++t)
                    shifted[t][t] = ((shifted[t][t] - lambda) % q + q) % q;
                auto coeff_kernel = kernel_basis_mod(std::move(shifted), q);
                if (coeff_kernel.empty()) continue;
                std::vector<std::vector<std::int64_t>> eigen_basis;
                for (const auto& coeffs : coeff_kernel) {
                    std::vector<std::int64_t> v(s, 0);
                    for (std::size_t t = 0; t < dim; ++t) {
                        if (coeffs[t] == 0) continue;
                        for (std::size_t col = 0; col < s; ++col)
                            v[col] = (v[col] + mod_mul(coeffs[t], basis[t][col], q)) % q;
                    }
                    eigen_basis.push_back(std::move(v));
                }
                found += eigen_basis.size();
                next.push_back(std::move(eigen_basis));
            }
            check_internal(found == dim, "eigenspaces of a class matrix do not fill the space");
        }
        subspaces = std::move(next);
    }
    std::vector<std::vector<std::int64_t>> eigenvectors;
    for (auto& basis : subspaces) {
        check_internal(basis.size() == 1, "class matrices failed to split the center");
        auto v = std::move(basis[0]);
        check_internal(v[0] != 0, "central character vanishes at the identity class");
        const std::int64_t scale = mod_inverse(v[0], q);
        for (auto& x : v) x = mod_mul(x, scale, q);
        eigenvectors.push_back(std::move(v));
    }
    check_internal(eigenvectors.size() == ctx.s, "wrong number of central characters");
    return eigenvectors;
}

}  // namespace detail

/// Character table of a permutation group by the Burnside--Dixon method.
///
/// A nonzero dixon_prime overrides the default modulus; it must be a prime
/// congruent to 1 mod exp(G) and larger than 2*sqrt(|G|).  The returned table
/// is at conductor n = |G| and has passed exact orthogonality verification.
inline CharacterTable dixon_character_table(const PermGroup& G, std::int64_t dixon_prime = 0) {
    const std::int64_t n = G.order();
    if (n > kCharacterTableOrderCap)
        throw SizeError("dixon_character_table: group order exceeds the cap of " +
                        std::to_string(kCharacterTableOrderCap));

    std::vector<TableClass> classes;
    classes.reserve(G.classes().size());
    for (const auto& c : G.classes()) classes.push_back({c.size, c.element_order});

    if (n == 1) {
        std::vector<std::vector<CyclotomicInt>> values{{CyclotomicInt::integer(1, 1)}};
        return CharacterTable(1, 1, 1, std::move(classes), std::move(values));
    }

    detail::DixonContext ctx;
    ctx.group = &G;
    ctx.n = n;
    ctx.e = G.exponent();
    ctx.s = G.classes().size();
    const std::size_t s = ctx.s;

    ctx.q = (dixon_prime != 0) ? dixon_prime
                               : detail::choose_dixon_prime(ctx.n, ctx.e);
    detail::require(is_prime(ctx.q) && ctx.q % ctx.e == 1 % ctx.e && ctx.q * ctx.q > 4 * ctx.n,
                    "dixon_character_table: unsuitable Dixon prime");
    const std::int64_t q = ctx.q;

    ctx.class_members.assign(s, {});
    for (std::size_t idx = 0; idx < G.elements().size(); ++idx)
        ctx.class_members[static_cast<std::size_t>(G.class_of(G.elements()[idx]))].push_back(
            static_cast<int>(idx));

    ctx.inverse_class.resize(s);
    ctx.power_class.assign(s, std::vector<int>(static_cast<std::size_t>(ctx.e)));
    for (std::size_t k = 0; k < s; ++k) {
        const Permutation& rep = G.classes()[k].representative;
        ctx.inverse_class[k] = G.class_of(rep.inverse());
        Permutation acc = Permutation::identity(G.degree());
        for (std::int64_t l = 0; l < ctx.e; ++l) {
            ctx.power_class[k][static_cast<std::size_t>(l)] = G.class_of(acc);
            acc = acc * rep;
        }
    }

    // class multiplication coefficients a_{ijk} = #{(x,y) in C_i x C_j : xy = rep_k}
    ctx.class_matrix.assign(
        s, std::vector<std::vector<std::int64_t>>(s, std::vector<std::int64_t>(s, 0)));
    for (std::size_t k = 0; k < s; ++k) {
        const Permutation& zk = G.classes()[k].representative;
        for (std::size_t i = 0; i < s; ++i) {
            for (int xi : ctx.class_members[i]) {
                const Permutation& x = G.elements()[static_cast<std::size_t>(xi)];
                const int j = G.class_of(x.inverse() * zk);
                ++ctx.class_matrix[i][static_cast<std::size_t>(j)][k];
            }
        }
    }
    for (auto& m : ctx.class_matrix)
        for (auto& row : m)
            for (auto& x : row) x %= q;

    const auto eigenvectors = detail::split_eigenvectors(ctx);

    // degrees from first orthogonality mod q, then as exact integers
    std::vector<std::int64_t> class_size_inv(s);
    for (std::size_t k = 0; k < s; ++k) class_size_inv[k] = mod_inverse(G.classes()[k].size % q, q);
    std::vector<std::int64_t> degrees(s, 0);
    for (std::size_t t = 0; t < s; ++t) {
        std::int64_t sum = 0;
        for (std::size_t k = 0; k < s; ++k) {
            const std::int64_t term = mod_mul(
                eigenvectors[t][k], eigenvectors[t][static_cast<std::size_t>(ctx.inverse_class[k])], q);
            sum = (sum + mod_mul(term, class_size_inv[k], q)) % q;
        }
        detail::check_internal(sum != 0, "degree norm vanished mod the Dixon prime");
        const std::int64_t d_squared = mod_mul(n % q, mod_inverse(sum, q), q);
        for (std::int64_t d = 1; 2 * d < q; ++d) {
            if (mod_mul(d, d, q) == d_squared) { degrees[t] = d; break; }
        }
        detail::check_internal(degrees[t] != 0, "no character degree below q/2");
    }
    std::int64_t degree_square_sum = 0;
    for (std::int64_t d : degrees) degree_square_sum += d * d;
    detail::check_internal(degree_square_sum == n, "squared degrees do not sum to |G|");

    // modular character values, then the multiplicity lift to Z[xi_e]
    std::vector<std::vector<std::int64_t>> modular(s, std::vector<std::int64_t>(s));
    for (std::size_t t = 0; t < s; ++t)
        for (std::size_t k = 0; k < s; ++k)
            modular[t][k] = mod_mul(degrees[t], mod_mul(eigenvectors[t][k], class_size_inv[k], q), q);

    const std::int64_t e = ctx.e;
    const std::int64_t z = detail::primitive_root_of_unity(q, e);
    std::vector<std::int64_t> zpow(static_cast<std::size_t>(e));
    zpow[0] = 1;
    for (std::int64_t r = 1; r < e; ++r)
        zpow[static_cast<std::size_t>(r)] = mod_mul(zpow[static_cast<std::size_t>(r - 1)], z, q);
    const std::int64_t e_inv = mod_inverse(e % q, q);

    std::vector<std::vector<CyclotomicInt>> values(
        s, std::vector<CyclotomicInt>(s, CyclotomicInt(static_cast<int>(e))));
    for (std::size_t t = 0; t < s; ++t) {
        for (std::size_t k = 0; k < s; ++k) {
            // m_r = (1/e) sum_l chi(rep_k^l) z^(-rl): the number of eigenvalues
            // xi_e^r of a representing matrix at rep_k
            IntPolynomial value_poly;
            BigInt multiplicity_sum = 0;
            for (std::int64_t r = 0; r < e; ++r) {
                std::int64_t acc = 0;
                for (std::int64_t l = 0; l < e; ++l) {
                    const int cls = ctx.power_class[k][static_cast<std::size_t>(l)];
                    const std::int64_t zexp = ((e - r) * l) % e;  // z^(-rl)
                    acc = (acc + mod_mul(modular[t][static_cast<std::size_t>(cls)],
                                         zpow[static_cast<std::size_t>(zexp)], q)) % q;
                }
                const std::int64_t m_r = mod_mul(acc, e_inv, q);
                if (m_r != 0)
                    value_poly = value_poly + IntPolynomial::monomial(m_r, static_cast<int>(r));
                multiplicity_sum += m_r;
            }
            detail::check_internal(multiplicity_sum == degrees[t],
                                   "eigenvalue multiplicities do not sum to the degree");
            values[t][k] = CyclotomicInt::from_polynomial(static_cast<int>(e), value_poly);
        }
    }

    CharacterTable at_exponent(n, e, static_cast<int>(e), classes, std::move(values));
    CharacterTable table = detail::embed_table(at_exponent, static_cast<int>(n));

    // canonical character order: trivial first, then (degree, lex value tuple)
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    const CyclotomicInt one = CyclotomicInt::integer(static_cast<int>(n), 1);
    auto is_trivial = [&](std::size_t i) {
        for (std::size_t c = 0; c < s; ++c)
            if (table.value(i, c) != one) return false;
        return true;
    };
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        if (table.degree(a) != table.degree(b)) return table.degree(a) < table.degree(b);
        for (std::size_t c = 0; c < s; ++c) {
            if (lex_less(table.value(a, c), table.value(b, c))) return true;
            if (lex_less(table.value(b, c), table.value(a, c))) return false;
        }
        return false;
    });
    std::vector<std::vector<CyclotomicInt>> sorted_values;
    sorted_values.reserve(s);
    for (std::size_t i = 0; i < s; ++i) sorted_values.push_back(table.values()[perm[i]]);
    CharacterTable result(n, e, static_cast<int>(n), classes, std::move(sorted_values));

    // exact verification; also check conjugacy symmetry against inverse classes
    const std::string why = detail::table_invariant_violation(result);
    detail::check_internal(why.empty(), "dixon_character_table: " + why);
    for (std::size_t t = 0; t < s; ++t)
        for (std::size_t k = 0; k < s; ++k)
            detail::check_internal(
                result.value(t, static_cast<std::size_t>(ctx.inverse_class[k])) ==
                    conjugate(result.value(t, k)),
                "dixon_character_table: values at inverse classes are not conjugate");
    return result;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace detail {

inline std::int64_t json_integer(const nlohmann::json& j, const std::string& what) {
    if (!j.is_number_integer())
        throw ParseError("character table: " + what + " must be an integer (floats are rejected)");
    if (j.is_number_unsigned() &&
        j.get<std::uint64_t>() >
            static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw ParseError("character table: " + what + " is out of range");
    return j.get<std::int64_t>();
}

}  // namespace detail

/// Schema:
///   { "order": n, "exponent": e, "conductor": N,
///     "classes": [{"size": s_i, "element_order": o_i}, ...],
///     "values": [[ [[k, c_k], ...] ]] }
/// where each value is the sparse list of (exponent, coefficient) pairs of
/// sum c_k xi_N^k with N | n.  No floats anywhere.
inline nlohmann::json table_to_json(const CharacterTable& t) {
    nlohmann::json j;
    j["order"] = t.order();
    j["exponent"] = t.exponent();
    j["conductor"] = t.conductor();
    j["classes"] = nlohmann::json::array();
    for (const auto& c : t.classes())
        j["classes"].push_back({{"size", c.size}, {"element_order", c.element_order}});
    j["values"] = nlohmann::json::array();
    for (std::size_t i = 0; i < t.s(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < t.s(); ++c) {
            nlohmann::json sparse = nlohmann::json::array();
            const auto& coeffs = t.value(i, c).coeffs();
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                if (coeffs[k] == 0) continue;
                detail::require(coeffs[k] >= std::numeric_limits<std::int64_t>::min() &&
                                    coeffs[k] <= std::numeric_limits<std::int64_t>::max(),
                                "table_to_json: coefficient out of the integer range");
                sparse.push_back({k, static_cast<std::int64_t>(coeffs[k])});
            }
            row.push_back(std::move(sparse));
        }
        j["values"].push_back(std::move(row));
    }
    return j;
}

/// Parses and fully validates a table; the result is embedded to conductor n.
inline CharacterTable table_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("character table: top level must be an object");
    for (const char* key : {"order", "exponent", "conductor", "classes", "values"})
        if (!j.contains(key))
            throw ParseError(std::string("character table: missing key '") + key + "'");

    const std::int64_t n = detail::json_integer(j["order"], "order");
    const std::int64_t e = detail::json_integer(j["exponent"], "exponent");
    const std::int64_t N = detail::json_integer(j["conductor"], "conductor");
    if (n < 1) throw ParseError("character table: order must be positive");
    if (n > kCharacterTableOrderCap)
        throw SizeError("character table: order exceeds the cap of " +
                        std::to_string(kCharacterTableOrderCap));
    if (N < 1 || n % N != 0)
        throw ValidationError("character table: conductor must divide the order");
    if (e < 1 || n % e != 0)
        throw ValidationError("character table: exponent must divide the order");

    if (!j["classes"].is_array() || j["classes"].empty())
        throw ParseError("character table: classes must be a nonempty array");
    std::vector<TableClass> classes;
    for (const auto& jc : j["classes"]) {
        if (!jc.is_object() || !jc.contains("size") || !jc.contains("element_order"))
            throw ParseError("character table: each class needs size and element_order");
        classes.push_back({detail::json_integer(jc["size"], "class size"),
                           detail::json_integer(jc["element_order"], "element order")});
    }
    const std::size_t s = classes.size();

    if (!j["values"].is_array() || j["values"].size() != s)
        throw ParseError("character table: values must be an s x s array");
    std::vector<std::vector<CyclotomicInt>> values;
    for (const auto& jrow : j["values"]) {
        if (!jrow.is_array() || jrow.size() != s)
            throw ParseError("character table: values must be an s x s array");
        std::vector<CyclotomicInt> row;
        for (const auto& jval : jrow) {
            if (!jval.is_array()) throw ParseError("character table: value must be a pair list");
            IntPolynomial poly;
            for (const auto& jpair : jval) {
                if (!jpair.is_array() || jpair.size() != 2)
                    throw ParseError("character table: value entries must be [exponent, coeff]");
                const std::int64_t k = detail::json_integer(jpair[0], "value exponent");
                const std::int64_t c = detail::json_integer(jpair[1], "value coefficient");
                if (k < 0 || k >= N)
                    throw ParseError("character table: value exponent out of range");
                poly = poly + IntPolynomial::monomial(c, static_cast<int>(k));
            }
            row.push_back(CyclotomicInt::from_polynomial(static_cast<int>(N), poly));
        }
        values.push_back(std::move(row));
    }

    CharacterTable raw(n, e, static_cast<int>(N), std::move(classes), std::move(values));
    CharacterTable embedded = detail::embed_table(raw, static_cast<int>(n));
    const std::string why = detail::table_invariant_violation(embedded);
    if (!why.empty()) throw ValidationError("character table: " + why);
    return embedded;
}

inline void save_table(const CharacterTable& t, std::ostream& out) {
    out << table_to_json(t).dump(2) << "\n";
}

inline void save_table(const CharacterTable& t, const std::string& path) {
    std::ofstream out(path);
    detail::require(out.good(), "save_table: cannot open '" + path + "'");
    save_table(t, out);
}

inline CharacterTable load_table(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("character table: invalid JSON: ") + ex.what());
    }
    return table_from_json(j);
}

inline CharacterTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ParseError("load_table: cannot open '" + path + "'");
    return load_table(in);
}

}  // namespace greenring

#endif  // GREENRING_CHARTABLE_HPP
