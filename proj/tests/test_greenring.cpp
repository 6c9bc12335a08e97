#include <catch2/catch_amalgamated.hpp>

#include "greenring/greenring.hpp"

using namespace greenring;

namespace {

GreenRing ring_for(const std::string& desc) {
    return structure_constants(dixon_character_table(make_group(desc)));
}

}  // namespace

TEST_CASE("structure_constants: A4") {
    GreenRing R = ring_for("A4");
    REQUIRE(R.s() == 4);

    SECTION("chi_4^2 = chi_1 + chi_2 + chi_3 + 2 chi_4") {
        REQUIRE(R.alpha(3, 3, 0) == 1);
        REQUIRE(R.alpha(3, 3, 1) == 1);
        REQUIRE(R.alpha(3, 3, 2) == 1);
        REQUIRE(R.alpha(3, 3, 3) == 2);
    }
    SECTION("chi_2 chi_3 = chi_1") {
        REQUIRE(R.alpha(1, 2, 0) == 1);
        REQUIRE(R.alpha(1, 2, 1) == 0);
        REQUIRE(R.alpha(1, 2, 2) == 0);
        REQUIRE(R.alpha(1, 2, 3) == 0);
    }
    SECTION("trivial character is the identity") {
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                REQUIRE(R.alpha(0, j, k) == (j == k ? 1 : 0));
    }
    SECTION("alpha_{ij}^1 = 1 exactly on dual pairs") {
        // duals in A4: chi_1 self, chi_2 <-> chi_3, chi_4 self
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const bool dual = (i == 0 && j == 0) || (i == 1 && j == 2) ||
                                  (i == 2 && j == 1) || (i == 3 && j == 3);
                REQUIRE(R.alpha(i, j, 0) == (dual ? 1 : 0));
            }
    }
}

TEST_CASE("structure constant invariants across a zoo") {
    for (const char* desc : {"S3", "A4", "D8", "S4", "C6", "C2xC4", "A5"}) {
        GreenRing R = ring_for(desc);
        const auto& t = R.table();
        const std::size_t s = R.s();

        SECTION(std::string("symmetry and degree homomorphism: ") + desc) {
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) {
                    BigInt weighted = 0;
                    for (std::size_t k = 0; k < s; ++k) {
                        REQUIRE(R.alpha(i, j, k) == R.alpha(j, i, k));
                        weighted += R.alpha(i, j, k) * t.degree(k);
                    }
                    REQUIRE(weighted == t.degree(i) * t.degree(j));
                }
        }
        SECTION(std::string("relations vanish at the character values of every class: ") + desc) {
            const RelationSet rels = relations(R);
            REQUIRE(rels.relations().size() == (s - 1) * s / 2);
            for (const auto& rel : rels.relations()) {
                for (std::size_t c = 0; c < s; ++c) {
                    CyclotomicInt value = t.value(rel.i, c) * t.value(rel.j, c);
                    value = value - CyclotomicInt::integer(t.conductor(), rel.constant);
                    for (std::size_t k = 1; k < s; ++k)
                        value = value - rel.linear[k - 1] * t.value(k, c);
                    REQUIRE(value.is_zero());
                }
            }
        }
    }
}

TEST_CASE("abelian group rings are permutation tensors") {
    for (const char* desc : {"C6", "C2xC4", "C2xC2xC3"}) {
        GreenRing R = ring_for(desc);
        const std::size_t s = R.s();
        for (std::size_t i = 0; i < s; ++i) {
            // each fixed i gives a permutation matrix in (j, k)
            for (std::size_t j = 0; j < s; ++j) {
                std::size_t ones = 0;
                for (std::size_t k = 0; k < s; ++k) {
                    REQUIRE((R.alpha(i, j, k) == 0 || R.alpha(i, j, k) == 1));
                    if (R.alpha(i, j, k) == 1) ++ones;
                }
                REQUIRE(ones == 1);
            }
        }
    }
}

TEST_CASE("relations") {
    SECTION("A4 gives the six quadrics of the multiplication table") {
        GreenRing R = ring_for("A4");
        const RelationSet rels = relations(R);
        REQUIRE(rels.generator_count() == 3);
        REQUIRE(rels.relations().size() == 6);

        std::vector<std::string> rendered;
        for (const auto& rel : rels.relations()) rendered.push_back(rel.render());
        REQUIRE(rendered == std::vector<std::string>{
                                "x2^2 - x3", "x2*x3 - 1", "x2*x4 - x4", "x3^2 - x2",
                                "x3*x4 - x4", "x4^2 - 1 - x2 - x3 - 2x4"});
    }
    SECTION("trivial group: no generators, no relations") {
        GreenRing R = ring_for("C1");
        const RelationSet rels = relations(R);
        REQUIRE(rels.generator_count() == 0);
        REQUIRE(rels.relations().empty());
    }
    SECTION("C2: single relation x2^2 - 1") {
        GreenRing R = ring_for("C2");
        const RelationSet rels = relations(R);
        REQUIRE(rels.relations().size() == 1);
        REQUIRE(rels.relations()[0].render() == "x2^2 - 1");
    }
}

TEST_CASE("evaluate_point") {
    GreenRing R = ring_for("A4");
    auto q2 = primes_above(12, 2)[0];
    auto q3 = primes_above(12, 3)[0];

    SECTION("identity class above 2: (1, 1, 1)") {
        auto coords = evaluate_point(R, 0, q2);
        REQUIRE(coords.size() == 3);
        for (const auto& x : coords) REQUIRE(x == q2.field()->one());
    }
    SECTION("identity class above 3: (1, 1, 0) since deg chi_4 = 3") {
        auto coords = evaluate_point(R, 0, q3);
        REQUIRE(coords[0] == q3.field()->one());
        REQUIRE(coords[1] == q3.field()->one());
        REQUIRE(coords[2].is_zero());
    }
    SECTION("conductor mismatch rejected") {
        auto wrong = primes_above(6, 2)[0];
        REQUIRE_THROWS_AS(evaluate_point(R, 0, wrong), ValidationError);
    }
}
