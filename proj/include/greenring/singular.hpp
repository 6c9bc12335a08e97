#ifndef GREENRING_SINGULAR_HPP
#define GREENRING_SINGULAR_HPP

/// Points of Spec(R(G) (x) Z[xi]) above a rational prime, their Jacobian and
/// extended Jacobian matrices over the residue field, and the three dimension
/// invariants: embedding dimension and the Zariski tangent dimensions over Z
/// and over Z[xi].

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "greenring/chartable.hpp"
#include "greenring/cyclotomic.hpp"
#include "greenring/error.hpp"
#include "greenring/greenring.hpp"
#include "greenring/groups.hpp"

namespace greenring {

/// A closed point of C above Q, identified by its p-regular base class and
/// the set of classes fused with it (one irreducible component each).
struct PointDescriptor {
    CyclotomicPrime Q;
    int base_class = 0;
    std::vector<int> fiber;  // ascending; contains base_class
};

struct PointReport {
    PointDescriptor point;
    bool singular = false;
    int edim = 0;
    int dimT_Z = 0;
    int dimT_Zxi = 0;
    bool ramified = false;
    bool p_in_P_squared = false;
    int kernel_dim = 0;
};

// ---------------------------------------------------------------------------
// Fusion from a bare character table
// ---------------------------------------------------------------------------

/// Classes c, d lie over one point of C above Q exactly when all character
/// values agree mod Q; each such cluster contains a unique p-regular class.
/// This recovers the fusion map from table data alone, with no group needed.
inline std::vector<int> table_fusion_map(const CharacterTable& t, const CyclotomicPrime& Q) {
    const std::size_t s = t.s();
    const std::int64_t p = Q.p();
    std::vector<std::vector<FieldElement>> reduced(s);
    for (std::size_t c = 0; c < s; ++c) {
        reduced[c].reserve(s);
        for (std::size_t i = 0; i < s; ++i) reduced[c].push_back(reduce_mod(t.value(i, c), Q));
    }
    std::vector<int> fusion(s, -1);
    for (std::size_t c = 0; c < s; ++c) {
        int base = -1;
        for (std::size_t r = 0; r < s; ++r) {
            if (t.classes()[r].element_order % p == 0) continue;  // not p-regular
            bool congruent = true;
            for (std::size_t i = 0; i < s && congruent; ++i)
                congruent = (reduced[c][i] == reduced[r][i]);
            if (congruent) {
                detail::require(base == -1,
                                "table_fusion_map: several p-regular classes are congruent");
                base = static_cast<int>(r);
            }
        }
        detail::require(base != -1, "table_fusion_map: no p-regular class congruent to a class");
        fusion[c] = base;
    }
    return fusion;
}

/// Fusion above p from the table: computed per prime Q and checked to be
/// Q-independent.
inline std::vector<int> table_fusion_map(const CharacterTable& t, std::int64_t p,
                                         std::uint64_t seed = kDefaultSeed) {
    const auto primes = primes_above(static_cast<int>(t.order()), p, seed);
    std::vector<int> fusion = table_fusion_map(t, primes[0]);
    for (std::size_t i = 1; i < primes.size(); ++i)
        detail::check_internal(table_fusion_map(t, primes[i]) == fusion,
                               "table_fusion_map: fusion differs between primes above p");
    return fusion;
}

// ---------------------------------------------------------------------------
// Point enumeration
// ---------------------------------------------------------------------------

/// Points of C above p for a given fusion map: one per prime Q above p and
/// per p-regular class.  With all_points false only the singular points
/// (fibers of size >= 2) are returned.  Order: Q sort order, then base class.
inline std::vector<PointDescriptor> enumerate_points(const GreenRing& R, std::int64_t p,
                                                     bool all_points,
                                                     const std::vector<int>& fusion,
                                                     std::uint64_t seed = kDefaultSeed) {
    const std::size_t s = R.s();
    detail::require(fusion.size() == s, "enumerate_points: fusion map has wrong size");
    std::vector<PointDescriptor> out;
    for (const auto& Q : primes_above(static_cast<int>(R.table().order()), p, seed)) {
        for (std::size_t base = 0; base < s; ++base) {
            if (fusion[base] != static_cast<int>(base)) continue;
            std::vector<int> fiber;
            for (std::size_t c = 0; c < s; ++c)
                if (fusion[c] == static_cast<int>(base)) fiber.push_back(static_cast<int>(c));
            if (!all_points && fiber.size() < 2) continue;
            out.push_back(PointDescriptor{Q, static_cast<int>(base), std::move(fiber)});
        }
    }
    return out;
}

inline std::vector<PointDescriptor> enumerate_points(const PermGroup& G, const GreenRing& R,
                                                     std::int64_t p, bool all_points,
                                                     std::uint64_t seed = kDefaultSeed) {
    return enumerate_points(R, p, all_points, fusion_map(G, p), seed);
}

// ---------------------------------------------------------------------------
// Jacobians
// ---------------------------------------------------------------------------

namespace detail {

/// Jacobian of the multiplication-table relations at the reduced character
/// values of an arbitrary class.  Row (i, j) with 1 <= i <= j <= s-1, column
/// l: the partial derivative of x_i x_j - alpha_{ij}^1 - sum alpha_{ij}^k x_k
/// by x_l, which is d_{li} a_j + d_{lj} a_i - alpha_{ij}^l.
inline FieldMatrix jacobian_at_class(const GreenRing& R, const CyclotomicPrime& Q,
                                     std::size_t class_index) {
    const std::size_t s = R.s();
    const auto coords = evaluate_point(R, class_index, Q);  // a_1 .. a_{s-1} (0-based chars 1..)
    const auto& alpha = R.alpha_mod(Q.p());
    const FieldPtr& field = Q.field();
    const std::size_t rows = (s - 1) * s / 2;
    FieldMatrix J(field, rows, s - 1);
    std::size_t row = 0;
    for (std::size_t i = 1; i < s; ++i) {
        for (std::size_t j = i; j < s; ++j, ++row) {
            for (std::size_t l = 1; l < s; ++l) {
                const std::int64_t am = alpha[(i * s + j) * s + l];
                if (am == 0 && l != i && l != j) continue;  // the matrix is sparse
                FieldElement entry = field->from_integer(-am);
                if (l == i) entry = entry + coords[j - 1];
                if (l == j) entry = entry + coords[i - 1];
                J.set(row, l - 1, entry);
            }
        }
    }
    return J;
}

/// Same matrix as jacobian_at_class but written straight into the flat
/// layout that the elimination consumes.  With `extended` the bordered
/// matrix is produced instead, its corner row placed first: a row
/// permutation never changes the kernel but lets the elimination stop early
/// on full-rank points.
inline FlatMatrix flat_jacobian(const GreenRing& R, const CyclotomicPrime& Q,
                                std::size_t class_index, bool extended) {
    const std::size_t s = R.s();
    const std::size_t d = static_cast<std::size_t>(Q.residue_degree());
    const std::int64_t p = Q.p();
    const auto& alpha = R.alpha_mod(p);
    const auto coords = evaluate_point(R, class_index, Q);

    std::vector<std::vector<std::int64_t>> coord_coeffs(s - 1,
                                                        std::vector<std::int64_t>(d, 0));
    for (std::size_t t = 0; t + 1 < s; ++t) {
        const auto& value = coords[t].value().coeffs();
        for (std::size_t i = 0; i < value.size(); ++i) coord_coeffs[t][i] = value[i];
    }

    const std::size_t relation_rows = (s - 1) * s / 2;
    FlatMatrix M(relation_rows + (extended ? 1 : 0), (s - 1) + (extended ? 1 : 0), d);
    const std::size_t row_offset = extended ? 1 : 0;
    if (extended) {
        const FieldElement corner = phi_derivative_at(Q);
        std::int64_t* cell = M.cell(0, s - 1);
        for (std::size_t i = 0; i < corner.value().coeffs().size(); ++i)
            cell[i] = corner.value().coeffs()[i];
    }
    std::size_t row = 0;
    for (std::size_t i = 1; i < s; ++i) {
        for (std::size_t j = i; j < s; ++j, ++row) {
            for (std::size_t l = 1; l < s; ++l) {
                const std::int64_t am = alpha[(i * s + j) * s + l];
                if (am == 0 && l != i && l != j) continue;
                std::int64_t* cell = M.cell(row + row_offset, l - 1);
                cell[0] = (p - am) % p;
                if (l == i)
                    for (std::size_t t = 0; t < d; ++t)
                        cell[t] = (cell[t] + coord_coeffs[j - 1][t]) % p;
                if (l == j)
                    for (std::size_t t = 0; t < d; ++t)
                        cell[t] = (cell[t] + coord_coeffs[i - 1][t]) % p;
            }
        }
    }
    return M;
}

}  // namespace detail

/// The Jacobian J_{G,P} of the point, an (s-1)s/2 by (s-1) matrix over k_P.
/// Any class of the fiber yields the same matrix; the base class is used.
inline FieldMatrix jacobian(const GreenRing& R, const PointDescriptor& pt) {
    return detail::jacobian_at_class(R, pt.Q, static_cast<std::size_t>(pt.base_class));
}

/// The extended Jacobian: J in the top-left block plus one extra row and
/// column that vanish except for the corner entry Phi_n'(zeta).
inline FieldMatrix extended_jacobian(const GreenRing& R, const PointDescriptor& pt) {
    const FieldMatrix J = jacobian(R, pt);
    FieldMatrix out(J.field(), J.rows() + 1, J.cols() + 1);
    for (std::size_t r = 0; r < J.rows(); ++r)
        for (std::size_t c = 0; c < J.cols(); ++c) out.set(r, c, J.at(r, c));
    out.set(J.rows(), J.cols(), phi_derivative_at(pt.Q));
    return out;
}

// ---------------------------------------------------------------------------
// Point analysis
// ---------------------------------------------------------------------------

/// Computes the report of a point:
///   dim T(C/Z[xi]) = dim ker J, edim = dim ker J + 1,
///   dim T(C/Z) = dim ker J + 1 on ramified primes and dim ker J otherwise,
/// and cross-checks dim T(C/Z) against the extended Jacobian kernel, failing
/// hard on any mismatch.
inline PointReport analyze_point(const GreenRing& R, const PointDescriptor& pt) {
    PointReport report{pt};
    const std::size_t base = static_cast<std::size_t>(pt.base_class);
    const std::size_t vars = R.s() - 1;
    const detail::FlatFieldOps ops(pt.Q.factor());

    const std::size_t j_rank = detail::flat_rank(detail::flat_jacobian(R, pt.Q, base, false), ops);
    report.kernel_dim = static_cast<int>(vars - j_rank);
    report.ramified = is_ramified(pt.Q.conductor(), pt.Q.p());
    report.p_in_P_squared = report.ramified;
    report.dimT_Zxi = report.kernel_dim;
    report.dimT_Z = report.kernel_dim + (report.ramified ? 1 : 0);
    report.edim = report.kernel_dim + 1;
    report.singular = pt.fiber.size() >= 2;

    const std::size_t ext_rank =
        detail::flat_rank(detail::flat_jacobian(R, pt.Q, base, true), ops);
    const int extended_kernel = static_cast<int>(vars + 1 - ext_rank);
    detail::check_internal(extended_kernel == report.dimT_Z,
                           "analyze_point: extended Jacobian kernel disagrees with the "
                           "ramification branch");
    return report;
}

// ---------------------------------------------------------------------------
// Component crossings and the abelian oracle
// ---------------------------------------------------------------------------

/// One entry per fused fiber of size >= 2: the classes whose irreducible
/// components meet above p.  The component total of C is always |Cl(G)|.
struct Crossing {
    int base_class = 0;
    std::vector<int> fiber;
    int component_count = 0;  // = fiber size
};

inline std::vector<Crossing> crossing_report(const PermGroup& G, std::int64_t p) {
    const auto fusion = fusion_map(G, p);
    std::vector<Crossing> out;
    for (std::size_t base = 0; base < fusion.size(); ++base) {
        if (fusion[base] != static_cast<int>(base)) continue;
        std::vector<int> fiber;
        for (std::size_t c = 0; c < fusion.size(); ++c)
            if (fusion[c] == static_cast<int>(base)) fiber.push_back(static_cast<int>(c));
        if (fiber.size() < 2) continue;
        out.push_back(Crossing{static_cast<int>(base), std::move(fiber), 0});
        out.back().component_count = static_cast<int>(out.back().fiber.size());
    }
    return out;
}

/// For abelian G: the number of primary cyclic factors of p-power order,
/// which is log_p |G / G^p|.  Every point of C above p has this tangent
/// dimension over Z[xi]; it is the independent oracle for analyze_point.
inline int abelian_tangent_dim(const PermGroup& G, std::int64_t p) {
    detail::require(is_prime(p), "abelian_tangent_dim: p must be prime");
    int count = 0;
    for (std::int64_t invariant : abelian_invariants(G))
        if (invariant % p == 0) ++count;
    return count;
}

}  // namespace greenring

#endif  // GREENRING_SINGULAR_HPP
