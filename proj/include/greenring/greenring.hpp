#ifndef GREENRING_GREENRING_HPP
#define GREENRING_GREENRING_HPP

/// The representation ring R(G) and its scalar extension to Z[xi]: the
/// structure-constant tensor of the character basis, the multiplication-table
/// presentation on the generators x_2, ..., x_s, and evaluation of points.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "greenring/chartable.hpp"
#include "greenring/cyclotomic.hpp"
#include "greenring/error.hpp"

namespace greenring {

/// The character ring with its integer structure constants
/// chi_i * chi_j = sum_k alpha_{ij}^k chi_k.
class GreenRing {
public:
    GreenRing(CharacterTable table, std::vector<BigInt> alpha)
        : table_(std::move(table)), alpha_(std::move(alpha)),
          reductions_(std::make_shared<ReductionCache>()) {
        detail::require(alpha_.size() == table_.s() * table_.s() * table_.s(),
                        "GreenRing: tensor shape mismatch");
    }

    const CharacterTable& table() const { return table_; }
    std::size_t s() const { return table_.s(); }

    const BigInt& alpha(std::size_t i, std::size_t j, std::size_t k) const {
        return alpha_[(i * s() + j) * s() + k];
    }

    /// The tensor reduced mod p, same indexing.  Memoized per prime; the
    /// cache is synchronized, so sharing one ring across concurrent point
    /// analyses stays safe.
    const std::vector<std::int64_t>& alpha_mod(std::int64_t p) const {
        std::lock_guard lock(reductions_->mutex);
        auto it = reductions_->by_prime.find(p);
        if (it != reductions_->by_prime.end()) return it->second;
        std::vector<std::int64_t> reduced(alpha_.size());
        for (std::size_t i = 0; i < alpha_.size(); ++i)
            reduced[i] = static_cast<std::int64_t>(alpha_[i] % p);
        return reductions_->by_prime.emplace(p, std::move(reduced)).first->second;
    }

private:
    struct ReductionCache {
        std::mutex mutex;
        std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
    };

    CharacterTable table_;
    std::vector<BigInt> alpha_;  // (i*s + j)*s + k
    std::shared_ptr<ReductionCache> reductions_;
};

/// Computes the alpha tensor exactly in Z[xi] as
/// alpha_{ij}^k = (1/n) sum_c |c| chi_i(c) chi_j(c) conj(chi_k(c)).
/// The division by n is exact integer division with a hard failure on any
/// nonzero remainder, every alpha must be a nonnegative rational integer, and
/// the defining identity is rechecked pointwise at every class.
inline GreenRing structure_constants(const CharacterTable& t) {
    const std::size_t s = t.s();
    const std::int64_t n = t.order();
    const int conductor = t.conductor();

    std::vector<std::vector<CyclotomicInt>> conj_values(
        s, std::vector<CyclotomicInt>(s, CyclotomicInt(conductor)));
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t c = 0; c < s; ++c) conj_values[k][c] = conjugate(t.value(k, c));

    std::vector<BigInt> alpha(s * s * s);
    std::vector<CyclotomicInt> product(s, CyclotomicInt(conductor));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i; j < s; ++j) {
            for (std::size_t c = 0; c < s; ++c) product[c] = t.value(i, c) * t.value(j, c);
            for (std::size_t k = 0; k < s; ++k) {
                CyclotomicInt sum(conductor);
                for (std::size_t c = 0; c < s; ++c)
                    sum.add_scaled(BigInt(t.classes()[c].size), product[c] * conj_values[k][c]);
                if (!sum.is_rational())
                    throw InternalError("structure_constants: inner product is irrational");
                const BigInt& total = sum.rational_value();
                if (total % n != 0)
                    throw InternalError("structure_constants: inner product not divisible by |G|");
                BigInt a = total / n;
                if (a < 0)
                    throw InternalError("structure_constants: negative structure constant");
                alpha[(i * s + j) * s + k] = a;
                alpha[(j * s + i) * s + k] = std::move(a);
            }
            // recheck chi_i chi_j = sum_k alpha chi_k at every class
            for (std::size_t c = 0; c < s; ++c) {
                CyclotomicInt rhs(conductor);
                for (std::size_t k = 0; k < s; ++k)
                    rhs.add_scaled(alpha[(i * s + j) * s + k], t.value(k, c));
                if (rhs != product[c])
                    throw InternalError("structure_constants: product identity fails pointwise");
            }
        }
    }
    // the trivial character is the ring identity
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t k = 0; k < s; ++k)
            detail::check_internal(alpha[(0 * s + j) * s + k] == (j == k ? 1 : 0),
                                   "structure_constants: trivial character is not the identity");
    return GreenRing(t, std::move(alpha));
}

// ---------------------------------------------------------------------------
// The multiplication-table presentation
// ---------------------------------------------------------------------------

/// One defining relation f_{ij} = x_i x_j - alpha_{ij}^1 - sum_k alpha_{ij}^k x_k.
/// Characters are 0-based here; x_t stands for chi_t and x_0 = 1 is eliminated.
struct Relation {
    std::size_t i, j;             // 1 <= i <= j <= s-1
    BigInt constant;              // alpha_{ij}^0, the trivial-character coefficient
    std::vector<BigInt> linear;   // linear[k-1] = alpha_{ij}^k for k = 1..s-1

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.i == b.i && a.j == b.j && a.constant == b.constant && a.linear == b.linear;
    }

    /// ASCII form, e.g. "x4^2 - 1 - x2 - x3 - 2x4" (variables are printed
    /// 1-based to match the usual x_2, ..., x_s numbering).
    std::string render() const {
        std::ostringstream out;
        if (i == j)
            out << "x" << (i + 1) << "^2";
        else
            out << "x" << (i + 1) << "*x" << (j + 1);
        if (constant != 0) out << " - " << constant;
        for (std::size_t k = 0; k < linear.size(); ++k) {
            if (linear[k] == 0) continue;
            out << " - ";
            if (linear[k] != 1) out << linear[k];
            out << "x" << (k + 2);
        }
        return out.str();
    }
};

/// The (s-1)s/2 quadratic relations of the multiplication-table presentation,
/// ordered by (i, j).
class RelationSet {
public:
    RelationSet(std::size_t generator_count, std::vector<Relation> relations)
        : generator_count_(generator_count), relations_(std::move(relations)) {}

    std::size_t generator_count() const { return generator_count_; }  // s - 1
    const std::vector<Relation>& relations() const { return relations_; }

private:
    std::size_t generator_count_;
    std::vector<Relation> relations_;
};

inline RelationSet relations(const GreenRing& R) {
    const std::size_t s = R.s();
    std::vector<Relation> rels;
    for (std::size_t i = 1; i < s; ++i) {
        for (std::size_t j = i; j < s; ++j) {
            Relation rel;
            rel.i = i;
            rel.j = j;
            rel.constant = R.alpha(i, j, 0);
            rel.linear.resize(s - 1);
            for (std::size_t k = 1; k < s; ++k) rel.linear[k - 1] = R.alpha(i, j, k);
            rels.push_back(std::move(rel));
        }
    }
    return RelationSet(s - 1, std::move(rels));
}

/// Coordinates of the closed point attached to a class and a prime Q: the
/// reduced character values (chi_2(c), ..., chi_s(c)) in the residue field.
inline std::vector<FieldElement> evaluate_point(const GreenRing& R, std::size_t class_index,
                                                const CyclotomicPrime& Q) {
    detail::require(class_index < R.s(), "evaluate_point: class index out of range");
    std::vector<FieldElement> out;
    out.reserve(R.s() - 1);
    for (std::size_t i = 1; i < R.s(); ++i)
        out.push_back(reduce_mod(R.table().value(i, class_index), Q));
    return out;
}

}  // namespace greenring

#endif  // GREENRING_GREENRING_HPP
