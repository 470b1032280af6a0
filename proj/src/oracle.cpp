#include "pptlab/oracle.hpp"

#include <algorithm>

namespace pptlab {

namespace {

// Tree edges out of a vertex with representative g: one parent edge g * s^-1
// and one child edge g * u * s per coset representative u of the vertex group
// modulo the structural endomorphism image.
struct EdgeStep {
    GroupElement element;
    std::string token;
};

std::vector<EdgeStep> edge_steps(const ActionHandle& action) {
    const GroupInstance& inst = action.group;
    std::vector<EdgeStep> steps;
    switch (action.kind) {
        case SpaceKind::LamplighterTreeRight: {
            GroupElement s = gen_t(inst);
            steps.push_back({inv(s), "s-"});
            steps.push_back({s, "s+"});
            steps.push_back({mul(gen_a(inst), s), "a.s+"});
            break;
        }
        case SpaceKind::LamplighterTreeLeft: {
            GroupElement s = inv(gen_t(inst));
            steps.push_back({inv(s), "s-"});
            steps.push_back({s, "s+"});
            steps.push_back({mul(gen_a(inst), s), "a.s+"});
            break;
        }
        case SpaceKind::BsTree: {
            GroupElement s = gen_t(inst);
            steps.push_back({inv(s), "s-"});
            GroupElement a = gen_a(inst);
            GroupElement u = GroupElement::identity(inst);
            for (int k = 0; k < inst.bs_base; ++k) {
                std::string token = k == 0 ? "s+" : "a" + std::to_string(k) + ".s+";
                steps.push_back({mul(u, s), token});
                u = mul(u, a);
            }
            break;
        }
        case SpaceKind::FreeCayley: {
            for (int i = 0; i < inst.rank; ++i) {
                GroupElement x = free_gen(inst, i);
                char c = static_cast<char>('a' + i);
                steps.push_back({x, std::string(1, c)});
                steps.push_back({inv(x), std::string(1, static_cast<char>('A' + i))});
            }
            break;
        }
        default:
            throw ValidationError("coset graphs are built for tree actions only");
    }
    return steps;
}

}  // namespace

int expected_degree(const ActionHandle& action) {
    switch (action.kind) {
        case SpaceKind::LamplighterTreeRight:
        case SpaceKind::LamplighterTreeLeft: return 3;
        case SpaceKind::BsTree: return action.group.bs_base + 1;
        case SpaceKind::FreeCayley: return 2 * action.group.rank;
        default: throw ValidationError("not a tree action");
    }
}

CosetGraph build_coset_graph(const ActionHandle& action, int depth, int64_t budget) {
    if (depth < 0) throw ValidationError("coset graph: negative depth");
    std::vector<EdgeStep> steps = edge_steps(action);

    CosetGraph graph;
    graph.action = action;
    graph.depth = depth;

    GroupElement id = GroupElement::identity(action.group);
    graph.key.push_back(vertex_key(action, id));
    graph.rep.push_back(id);
    graph.label.push_back("");
    graph.dist.push_back(0);
    graph.adj.emplace_back();
    graph.id.emplace(graph.key[0], 0);
    graph.root = 0;

    std::vector<int> frontier{0};
    for (int level = 1; level <= depth; ++level) {
        std::sort(frontier.begin(), frontier.end(),
                  [&](int a, int b) { return graph.label[a] < graph.label[b]; });
        std::vector<int> next;
        for (int v : frontier) {
            for (const auto& step : steps) {
                GroupElement h = mul(graph.rep[v], step.element);
                std::string key = vertex_key(action, h);
                auto it = graph.id.find(key);
                int u;
                if (it != graph.id.end()) {
                    u = it->second;
                } else {
                    if (graph.vertex_count() >= budget)
                        throw ResourceError("coset graph: vertex budget exceeded");
                    u = static_cast<int>(graph.key.size());
                    graph.id.emplace(key, u);
                    graph.key.push_back(std::move(key));
                    graph.rep.push_back(std::move(h));
                    graph.label.push_back(graph.label[v].empty()
                                              ? step.token
                                              : graph.label[v] + " " + step.token);
                    graph.dist.push_back(level);
                    graph.adj.emplace_back();
                    next.push_back(u);
                }
                bool present = std::find(graph.adj[v].begin(), graph.adj[v].end(), u) !=
                               graph.adj[v].end();
                if (!present && u != v) {
                    graph.adj[v].push_back(u);
                    graph.adj[u].push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }

    // Interior vertices must have full degree; the graph is a tree.
    int degree = expected_degree(action);
    for (int v = 0; v < graph.vertex_count(); ++v) {
        if (graph.dist[v] < depth && static_cast<int>(graph.adj[v].size()) != degree)
            throw Error("coset graph: interior vertex of degree " +
                        std::to_string(graph.adj[v].size()) + ", expected " +
                        std::to_string(degree));
    }
    return graph;
}

std::optional<int64_t> oracle_distance(const CosetGraph& graph, const GroupElement& g) {
    auto it = graph.id.find(vertex_key(graph.action, g));
    if (it == graph.id.end()) return std::nullopt;
    // Boundary vertices may be reachable by a shorter path outside the
    // explored region only if deeper than the BFS radius; within depth the
    // recorded distance is exact.
    return graph.dist[it->second];
}

void write_edge_list(const CosetGraph& graph, std::ostream& os) {
    for (int v = 0; v < graph.vertex_count(); ++v) {
        for (int u : graph.adj[v]) {
            if (u < v) continue;
            os << v << ',' << u << ',' << (graph.label[v].empty() ? "e" : graph.label[v])
               << ',' << (graph.label[u].empty() ? "e" : graph.label[u]) << '\n';
        }
    }
}

}  // namespace pptlab
