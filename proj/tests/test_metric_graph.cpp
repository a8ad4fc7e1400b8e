#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qg/fixtures.hpp"
#include "qg/metric_graph.hpp"

using namespace qg;

TEST_CASE("validation catches the basics") {
    CHECK(validate(tetrahedron()).ok);
    // dangling edge endpoint
    MetricGraph bad({{0, BoundaryCondition::kirchhoff()}},
                    {{0, 0, 5, 1.0, 0.0}});
    CHECK_FALSE(validate(bad).ok);
    // nonpositive length
    MetricGraph bad2({{0, BoundaryCondition::kirchhoff()},
                      {1, BoundaryCondition::kirchhoff()}},
                     {{0, 0, 1, 0.0, 0.0}});
    CHECK_FALSE(validate(bad2).ok);
    // duplicate ids
    MetricGraph bad3({{0, BoundaryCondition::kirchhoff()},
                      {0, BoundaryCondition::kirchhoff()}},
                     {});
    CHECK_FALSE(validate(bad3).ok);
}

TEST_CASE("delta(0) is Kirchhoff") {
    CHECK(BoundaryCondition::delta(0.0) == BoundaryCondition::kirchhoff());
    CHECK(BoundaryCondition::delta(1.0).kind == BcKind::Delta);
}

TEST_CASE("degree counts loops twice") {
    MetricGraph g({{0, BoundaryCondition::kirchhoff()},
                   {1, BoundaryCondition::kirchhoff()}},
                  {{0, 0, 0, 1.0, 0.0}, {1, 0, 1, 1.0, 0.0}});
    CHECK(g.degree(0) == 3);
    CHECK(g.degree(1) == 1);
}

TEST_CASE("insert then remove is the identity up to ids") {
    MetricGraph g = tetrahedron();
    int v = -1;
    MetricGraph h = insert_kirchhoff_vertex(g, 3, 0.3, &v);
    CHECK(h.degree(v) == 2);
    CHECK(std::abs(total_length(h) - total_length(g)) < 1e-12);
    MetricGraph back = remove_kirchhoff_degree2(h, v);
    CHECK(canonical_form(back) == canonical_form(g));
}

TEST_CASE("insertion splits alpha proportionally") {
    MetricGraph g = loop_graph(2.0, 1.0);
    int v = -1;
    MetricGraph h = insert_kirchhoff_vertex(g, 0, 0.5, &v);
    double a0 = h.edges()[0].alpha, a1 = h.edges()[1].alpha;
    CHECK(std::abs(a0 + a1 - 1.0) < 1e-12);
    CHECK(std::abs(a0 - 0.25) < 1e-12);
}

TEST_CASE("insert rejects boundary positions") {
    MetricGraph g = interval(1.0);
    CHECK_THROWS_AS(insert_kirchhoff_vertex(g, 0, 0.0), std::domain_error);
    CHECK_THROWS_AS(insert_kirchhoff_vertex(g, 0, 1.0), std::domain_error);
}

TEST_CASE("remove rejects wrong degree or bc") {
    MetricGraph g = interval(1.0);  // Dirichlet tips, degree 1
    CHECK_THROWS_AS(remove_kirchhoff_degree2(g, 0), std::invalid_argument);
    int v = -1;
    MetricGraph h = insert_vertex_at(g, 0, 0.5, BoundaryCondition::delta(2.0), &v);
    CHECK_THROWS_AS(remove_kirchhoff_degree2(h, v), std::invalid_argument);
}

TEST_CASE("canonical form is orientation-blind") {
    MetricGraph a({{0, BoundaryCondition::kirchhoff()},
                   {1, BoundaryCondition::kirchhoff()}},
                  {{0, 0, 1, 1.5, 0.3}});
    MetricGraph b({{0, BoundaryCondition::kirchhoff()},
                   {1, BoundaryCondition::kirchhoff()}},
                  {{0, 1, 0, 1.5, -0.3}});
    CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("edge components") {
    MetricGraph g({{0, BoundaryCondition::kirchhoff()},
                   {1, BoundaryCondition::kirchhoff()},
                   {2, BoundaryCondition::kirchhoff()},
                   {3, BoundaryCondition::kirchhoff()}},
                  {{0, 0, 1, 1.0, 0.0}, {1, 2, 2, 1.0, 0.0}});
    auto comps = g.edge_components();
    CHECK(comps.size() == 2);  // vertex 3 is isolated and ignored
}
