// Library walkthrough: build the representation ring of A4, print its
// defining relations, and analyze every closed point above the primes
// dividing the group order.
//
// Build with the rest of the project, then run:  ./demo/singular_walkthrough

#include <cstdio>

#include "greenring/singular.hpp"

using namespace greenring;

int main() {
    PermGroup G = make_group("A4");
    CharacterTable table = dixon_character_table(G);
    GreenRing ring = structure_constants(table);

    std::printf("group of order %lld with %zu conjugacy classes, conductor %d\n",
                static_cast<long long>(G.order()), ring.s(), table.conductor());

    const RelationSet presentation = relations(ring);
    std::printf("\npresentation of the ring on x2..x%zu:\n", ring.s());
    for (const auto& rel : presentation.relations())
        std::printf("  %s\n", rel.render().c_str());

    for (std::int64_t p : {2, 3}) {
        std::printf("\npoints above %lld:\n", static_cast<long long>(p));
        for (const auto& pt : enumerate_points(G, ring, p, true)) {
            PointReport r = analyze_point(ring, pt);
            std::printf(
                "  Q = (%lld, %s), base class c%d, %zu component(s): edim %d, "
                "dim T(C/Z) %d, dim T(C/Z[xi]) %d%s\n",
                static_cast<long long>(p), pt.Q.factor().to_string().c_str(),
                pt.base_class + 1, pt.fiber.size(), r.edim, r.dimT_Z, r.dimT_Zxi,
                r.singular ? "  [singular]" : "");
        }
        for (const auto& crossing : crossing_report(G, p)) {
            std::printf("  crossing: %d components meet (classes", crossing.component_count);
            for (int c : crossing.fiber) std::printf(" c%d", c + 1);
            std::printf(")\n");
        }
    }
    return 0;
}
