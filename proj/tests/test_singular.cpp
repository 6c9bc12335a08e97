#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "greenring/singular.hpp"

using namespace greenring;

namespace {

struct Pipeline {
    PermGroup G;
    GreenRing R;
    explicit Pipeline(const std::string& desc)
        : G(make_group(desc)), R(structure_constants(dixon_character_table(G))) {}
};

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (const auto& [p, e] : factorize(n)) {
        (void)e;
        out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("enumerate_points") {
    SECTION("A4 above 2: one singular point with fiber {1a, 2a}") {
        Pipeline pl("A4");
        auto pts = enumerate_points(pl.G, pl.R, 2, false);
        REQUIRE(pts.size() == 1);
        REQUIRE(pts[0].Q.factor() == PrimeFieldPolynomial(2, {1, 1, 1}));
        REQUIRE(pts[0].base_class == 0);
        REQUIRE(pts[0].fiber == std::vector<int>{0, 1});
    }
    SECTION("A4 above 3: one singular point with fiber {1a, 3a, 3b}") {
        Pipeline pl("A4");
        auto pts = enumerate_points(pl.G, pl.R, 3, false);
        REQUIRE(pts.size() == 1);
        REQUIRE(pts[0].Q.factor() == PrimeFieldPolynomial(3, {1, 0, 1}));
        REQUIRE(pts[0].fiber == std::vector<int>{0, 2, 3});
    }
    SECTION("trivial group: a 0x0 Jacobian and a regular point") {
        Pipeline pl("C1");
        auto pts = enumerate_points(pl.G, pl.R, 2, true);  // demonstration prime
        REQUIRE(pts.size() == 1);
        REQUIRE(pts[0].fiber == std::vector<int>{0});
        FieldMatrix J = jacobian(pl.R, pts[0]);
        REQUIRE(J.rows() == 0);
        REQUIRE(J.cols() == 0);
        PointReport r = analyze_point(pl.R, pts[0]);
        REQUIRE(r.edim == 1);
        REQUIRE_FALSE(r.singular);
    }
    SECTION("S3 above 5: no singular points") {
        Pipeline pl("S3");
        REQUIRE(enumerate_points(pl.G, pl.R, 5, false).empty());
        auto all = enumerate_points(pl.G, pl.R, 5, true);
        REQUIRE(all.size() == 3);  // one Q above 5, three regular points
        for (const auto& pt : all) REQUIRE(pt.fiber.size() == 1);
    }
}

TEST_CASE("jacobian matrices of the A4 example") {
    Pipeline pl("A4");

    SECTION("at P_2, entry-wise over F_4") {
        auto pts = enumerate_points(pl.G, pl.R, 2, false);
        FieldMatrix J = jacobian(pl.R, pts[0]);
        REQUIRE(J.rows() == 6);
        REQUIRE(J.cols() == 3);
        const int expected[6][3] = {{2, 1, 0}, {1, 1, 0}, {1, 0, 0},
                                    {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
        const auto& F = pts[0].Q.field();
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                REQUIRE(J.at(r, c) == F->from_integer(expected[r][c]));
        REQUIRE(kernel_dimension(J) == 1);
    }
    SECTION("at P_3, entry-wise over F_9") {
        auto pts = enumerate_points(pl.G, pl.R, 3, false);
        FieldMatrix J = jacobian(pl.R, pts[0]);
        const int expected[6][3] = {{2, 2, 0}, {1, 1, 0}, {0, 0, 0},
                                    {2, 2, 0}, {0, 0, 0}, {2, 2, 1}};
        const auto& F = pts[0].Q.field();
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                REQUIRE(J.at(r, c) == F->from_integer(expected[r][c]));
        REQUIRE(kernel_dimension(J) == 1);
    }
    SECTION("the Jacobian is fiber-member independent") {
        for (std::int64_t p : {2, 3}) {
            auto pts = enumerate_points(pl.G, pl.R, p, false);
            const FieldMatrix J = jacobian(pl.R, pts[0]);
            for (int member : pts[0].fiber)
                REQUIRE(detail::jacobian_at_class(pl.R, pts[0].Q,
                                                  static_cast<std::size_t>(member)) == J);
        }
    }
}

TEST_CASE("extended_jacobian") {
    SECTION("A4 at P_2: zero corner, since 2 ramifies in Z[xi_12]") {
        Pipeline pl("A4");
        auto pts = enumerate_points(pl.G, pl.R, 2, false);
        FieldMatrix JE = extended_jacobian(pl.R, pts[0]);
        REQUIRE(JE.rows() == 7);
        REQUIRE(JE.cols() == 4);
        REQUIRE(JE.at(6, 3).is_zero());
    }
    SECTION("S3 at its point above 2: nonzero corner") {
        Pipeline pl("S3");
        auto pts = enumerate_points(pl.G, pl.R, 2, false);
        REQUIRE(pts.size() == 1);
        FieldMatrix JE = extended_jacobian(pl.R, pts[0]);
        REQUIRE_FALSE(JE.at(JE.rows() - 1, JE.cols() - 1).is_zero());
    }
    SECTION("deleting the last row and column recovers the Jacobian") {
        Pipeline pl("S4");
        for (std::int64_t p : {2, 3}) {
            for (const auto& pt : enumerate_points(pl.G, pl.R, p, true)) {
                FieldMatrix J = jacobian(pl.R, pt);
                FieldMatrix JE = extended_jacobian(pl.R, pt);
                for (std::size_t r = 0; r < J.rows(); ++r) {
                    for (std::size_t c = 0; c < J.cols(); ++c) REQUIRE(JE.at(r, c) == J.at(r, c));
                    REQUIRE(JE.at(r, J.cols()).is_zero());
                }
                for (std::size_t c = 0; c < J.cols(); ++c) REQUIRE(JE.at(J.rows(), c).is_zero());
            }
        }
    }
}

TEST_CASE("analyze_point") {
    SECTION("A4 at P_2 and P_3: edim 2, dim T(C/Z) 2, dim T(C/Z[xi]) 1") {
        Pipeline pl("A4");
        for (std::int64_t p : {2, 3}) {
            auto pts = enumerate_points(pl.G, pl.R, p, false);
            PointReport r = analyze_point(pl.R, pts[0]);
            REQUIRE(r.edim == 2);
            REQUIRE(r.dimT_Z == 2);
            REQUIRE(r.dimT_Zxi == 1);
            REQUIRE(r.singular);
            REQUIRE(r.ramified);
            REQUIRE(r.p_in_P_squared);
        }
    }
    SECTION("S3 above 2: edim 2 but dim T(C/Z) = 1 (unramified)") {
        Pipeline pl("S3");
        auto pts = enumerate_points(pl.G, pl.R, 2, false);
        PointReport r = analyze_point(pl.R, pts[0]);
        REQUIRE(r.edim == 2);
        REQUIRE(r.dimT_Z == 1);
        REQUIRE(r.dimT_Zxi == 1);
        REQUIRE_FALSE(r.p_in_P_squared);
    }
    SECTION("A5 above 5 at f = x^2+2x+4: (2, 2, 1)") {
        Pipeline pl("A5");
        auto pts = enumerate_points(pl.G, pl.R, 5, false);
        REQUIRE(pts.size() == 2);
        REQUIRE(pts[0].Q.factor() == PrimeFieldPolynomial(5, {4, 2, 1}));
        PointReport r = analyze_point(pl.R, pts[0]);
        REQUIRE(r.edim == 2);
        REQUIRE(r.dimT_Z == 2);
        REQUIRE(r.dimT_Zxi == 1);
    }
    SECTION("regular points above primes dividing the order have edim 1") {
        Pipeline pl("S4");
        for (std::int64_t p : {2, 3}) {
            for (const auto& pt : enumerate_points(pl.G, pl.R, p, true)) {
                if (pt.fiber.size() >= 2) continue;
                PointReport r = analyze_point(pl.R, pt);
                REQUIRE(r.edim == 1);
                REQUIRE(r.kernel_dim == 0);
                REQUIRE_FALSE(r.singular);
            }
        }
    }
    SECTION("dichotomy holds across a zoo") {
        for (const char* desc : {"S3", "A4", "D8", "D16", "S4", "C6", "C2xC4", "A5"}) {
            Pipeline pl(desc);
            for (std::int64_t p : prime_divisors(pl.G.order())) {
                for (const auto& pt : enumerate_points(pl.G, pl.R, p, true)) {
                    PointReport r = analyze_point(pl.R, pt);
                    REQUIRE(r.edim == r.dimT_Zxi + 1);
                    REQUIRE(r.dimT_Z - r.dimT_Zxi == (r.ramified ? 1 : 0));
                    REQUIRE(r.singular == (pt.fiber.size() >= 2));
                    if (!r.singular) REQUIRE(r.edim == 1);
                }
            }
        }
    }
}

TEST_CASE("appending dependent rows never changes the kernel dimension") {
    Pipeline pl("S4");
    std::mt19937_64 rng(kDefaultSeed);
    for (std::int64_t p : {2, 3}) {
        for (const auto& pt : enumerate_points(pl.G, pl.R, p, false)) {
            FieldMatrix J = jacobian(pl.R, pt);
            const std::size_t extra = 4;
            FieldMatrix bigger(J.field(), J.rows() + extra, J.cols());
            for (std::size_t r = 0; r < J.rows(); ++r)
                for (std::size_t c = 0; c < J.cols(); ++c) bigger.set(r, c, J.at(r, c));
            const FieldElement xi_image = pt.Q.field()->generator();
            for (std::size_t r = 0; r < extra; ++r) {
                // random Z[xi]-combination of existing relations, imaged in k_P
                std::vector<FieldElement> coeffs;
                for (std::size_t src = 0; src < J.rows(); ++src) {
                    FieldElement coeff =
                        pt.Q.field()->from_integer(static_cast<std::int64_t>(rng() % 7));
                    if (rng() % 2 == 0) coeff = coeff * xi_image;
                    coeffs.push_back(coeff);
                }
                for (std::size_t c = 0; c < J.cols(); ++c) {
                    FieldElement acc = pt.Q.field()->zero();
                    for (std::size_t src = 0; src < J.rows(); ++src)
                        acc = acc + coeffs[src] * J.at(src, c);
                    bigger.set(J.rows() + r, c, acc);
                }
            }
            REQUIRE(kernel_dimension(bigger) == kernel_dimension(J));
        }
    }
}

TEST_CASE("crossing_report") {
    SECTION("A4 above 3: one crossing of 3 components") {
        PermGroup G = make_group("A4");
        auto crossings = crossing_report(G, 3);
        REQUIRE(crossings.size() == 1);
        REQUIRE(crossings[0].fiber == std::vector<int>{0, 2, 3});
        REQUIRE(crossings[0].component_count == 3);
    }
    SECTION("A4 above 2: one crossing of 2 components") {
        PermGroup G = make_group("A4");
        auto crossings = crossing_report(G, 2);
        REQUIRE(crossings.size() == 1);
        REQUIRE(crossings[0].fiber == std::vector<int>{0, 1});
        REQUIRE(crossings[0].component_count == 2);
    }
    SECTION("no crossings above primes not dividing the order") {
        REQUIRE(crossing_report(make_group("A4"), 7).empty());
    }
}

TEST_CASE("abelian_tangent_dim") {
    REQUIRE(abelian_tangent_dim(make_group("C2xC4"), 2) == 2);
    REQUIRE(abelian_tangent_dim(make_group("C6"), 2) == 1);
    REQUIRE(abelian_tangent_dim(make_group("C2xC2xC3"), 3) == 1);
    REQUIRE(abelian_tangent_dim(make_group("C6"), 5) == 0);
    REQUIRE_THROWS_AS(abelian_tangent_dim(make_group("S3"), 2), ValidationError);

    SECTION("matches the Jacobian pipeline on sample abelian groups") {
        for (const char* desc : {"C6", "C2xC4", "C2xC2xC3", "C8", "C12"}) {
            Pipeline pl(desc);
            for (std::int64_t p : prime_divisors(pl.G.order())) {
                const int expected = abelian_tangent_dim(pl.G, p);
                for (const auto& pt : enumerate_points(pl.G, pl.R, p, true))
                    REQUIRE(analyze_point(pl.R, pt).dimT_Zxi == expected);
            }
        }
    }
}

TEST_CASE("flat fast path agrees with the assembled matrices") {
    for (const char* desc : {"S3", "A4", "S4", "C2xC4", "A5"}) {
        Pipeline pl(desc);
        for (std::int64_t p : prime_divisors(pl.G.order())) {
            for (const auto& pt : enumerate_points(pl.G, pl.R, p, true)) {
                const std::size_t base = static_cast<std::size_t>(pt.base_class);
                const std::size_t d = static_cast<std::size_t>(pt.Q.residue_degree());

                FieldMatrix J = jacobian(pl.R, pt);
                auto flat = detail::flat_jacobian(pl.R, pt.Q, base, false);
                REQUIRE(flat.rows == J.rows());
                REQUIRE(flat.cols == J.cols());
                for (std::size_t r = 0; r < J.rows(); ++r)
                    for (std::size_t c = 0; c < J.cols(); ++c)
                        for (std::size_t i = 0; i < d; ++i)
                            REQUIRE(flat.cell(r, c)[i] ==
                                    J.at(r, c).value().coeff(static_cast<int>(i)));

                // extended: corner row first in the flat layout, last in the matrix
                FieldMatrix E = extended_jacobian(pl.R, pt);
                auto flat_ext = detail::flat_jacobian(pl.R, pt.Q, base, true);
                REQUIRE(flat_ext.rows == E.rows());
                REQUIRE(flat_ext.cols == E.cols());
                for (std::size_t r = 0; r < E.rows(); ++r) {
                    const std::size_t flat_row = (r + 1) % E.rows();
                    for (std::size_t c = 0; c < E.cols(); ++c)
                        for (std::size_t i = 0; i < d; ++i)
                            REQUIRE(flat_ext.cell(flat_row, c)[i] ==
                                    E.at(r, c).value().coeff(static_cast<int>(i)));
                }
            }
        }
    }
}

TEST_CASE("table fusion agrees with group fusion") {
    for (const char* desc : {"S3", "A4", "D8", "S4", "C2xC4", "A5"}) {
        PermGroup G = make_group(desc);
        CharacterTable t = dixon_character_table(G);
        for (std::int64_t p : prime_divisors(G.order()))
            REQUIRE(table_fusion_map(t, p) == fusion_map(G, p));
    }
}
