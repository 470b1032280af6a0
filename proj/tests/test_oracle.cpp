#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <sstream>

#include "pptlab/ball.hpp"
#include "pptlab/oracle.hpp"

using namespace pptlab;

namespace {

const GroupInstance kLamp = GroupInstance::lamplighter();
const GroupInstance kBs2 = GroupInstance::baumslag_solitar(2);
const GroupInstance kFree2 = GroupInstance::free_group(2);

// Test-side BFS from an arbitrary vertex, independent of the builder's dist.
std::vector<int> bfs_from(const CosetGraph& g, int start) {
    std::vector<int> dist(g.key.size(), -1);
    std::deque<int> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : g.adj[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

}  // namespace

TEST_CASE("lamplighter T1 depth 1: root of degree 3") {
    CosetGraph g = build_coset_graph(ActionHandle::lamplighter_t1(), 1);
    CHECK(g.vertex_count() == 4);
    CHECK(g.adj[g.root].size() == 3);
}

TEST_CASE("bs(1,2) tree depth 1: root plus 3 neighbors") {
    CosetGraph g = build_coset_graph(ActionHandle::bs_tree(kBs2), 1);
    CHECK(g.vertex_count() == 4);
}

TEST_CASE("free rank-2 Cayley tree depth 2: 17 vertices") {
    CosetGraph g = build_coset_graph(ActionHandle::free_cayley(kFree2), 2);
    CHECK(g.vertex_count() == 17);
}

TEST_CASE("regular degrees at interior vertices") {
    for (const auto& [action, degree] :
         std::vector<std::pair<ActionHandle, int>>{
             {ActionHandle::lamplighter_t1(), 3},
             {ActionHandle::lamplighter_t2(), 3},
             {ActionHandle::bs_tree(kBs2), 3},
             {ActionHandle::bs_tree(GroupInstance::baumslag_solitar(3)), 4},
             {ActionHandle::free_cayley(kFree2), 4}}) {
        CHECK(expected_degree(action) == degree);
        CosetGraph g = build_coset_graph(action, 4);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.dist[v] < g.depth) CHECK(static_cast<int>(g.adj[v].size()) == degree);
    }
}

TEST_CASE("the explored region is a tree and distances are symmetric") {
    CosetGraph g = build_coset_graph(ActionHandle::lamplighter_t1(), 5);
    int64_t edges = 0;
    for (int v = 0; v < g.vertex_count(); ++v) edges += static_cast<int64_t>(g.adj[v].size());
    CHECK(edges / 2 == g.vertex_count() - 1);

    std::vector<int> from_root = bfs_from(g, g.root);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(from_root[v] == g.dist[v]);
    for (int v = 0; v < g.vertex_count(); v += 7) {
        std::vector<int> from_v = bfs_from(g, v);
        for (int w = 0; w < g.vertex_count(); w += 5)
            CHECK(from_v[w] == bfs_from(g, w)[v]);
    }
}

TEST_CASE("oracle distances: frozen examples") {
    CosetGraph g = build_coset_graph(ActionHandle::lamplighter_t1(), 3);
    CHECK(oracle_distance(g, GroupElement::identity(kLamp)) == 0);
    CHECK(oracle_distance(g, gen_t(kLamp)) == 1);     // t is not in A, tA adjacent to A
    CHECK(oracle_distance(g, gen_a(kLamp)) == 0);     // a lies in A
    CHECK(oracle_distance(g, GroupElement::lamplighter({1}, 0)) == 2);
}

TEST_CASE("out-of-range queries are explicit") {
    CosetGraph g = build_coset_graph(ActionHandle::bs_tree(kBs2), 3);
    CHECK_FALSE(oracle_distance(g, power(gen_t(kBs2), 9)).has_value());
}

TEST_CASE("oracle equals closed-form displacement on radius-5 balls") {
    for (const auto& action :
         {ActionHandle::lamplighter_t1(), ActionHandle::lamplighter_t2(),
          ActionHandle::bs_tree(kBs2), ActionHandle::free_cayley(kFree2)}) {
        CosetGraph graph = build_coset_graph(action, 5);
        Ball ball = enumerate_ball(standard_generators(action.group), 5);
        for (const auto& g : ball.elements) {
            auto d = oracle_distance(graph, g);
            REQUIRE(d.has_value());
            CHECK(Rat(*d) == exact_displacement(action, g));
        }
    }
}

TEST_CASE("edge list export") {
    CosetGraph g = build_coset_graph(ActionHandle::lamplighter_t1(), 2);
    std::ostringstream os;
    write_edge_list(g, os);
    std::string text = os.str();
    int64_t lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == g.vertex_count() - 1);
    CHECK(text.find("s-") != std::string::npos);
}

TEST_CASE("vertex budget raises a resource error") {
    CHECK_THROWS_AS(build_coset_graph(ActionHandle::free_cayley(kFree2), 8, 50), ResourceError);
}
