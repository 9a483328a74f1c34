#include "mwg/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "mwg/angle.hpp"
#include "mwg/error.hpp"

namespace mwg {

std::string_view weightKindName(WeightKind kind) {
    switch (kind) {
        case WeightKind::Combinatorial: return "combinatorial";
        case WeightKind::Standard: return "standard";
        case WeightKind::Custom: return "custom";
    }
    return "custom";
}

WeightKind parseWeightKind(std::string_view name) {
    if (name == "combinatorial") return WeightKind::Combinatorial;
    if (name == "standard") return WeightKind::Standard;
    if (name == "custom") return WeightKind::Custom;
    fail(ErrorCode::InvalidArgument, "unknown weight kind '" + std::string(name) + "'");
}

namespace {

// Keep in-range angles untouched so that file round-trips stay bit-exact.
double canonicalAngle(double a) {
    if (a >= -kPi && a < kPi) return a;
    return normalizeAngle(a);
}

}  // namespace

MWGraph::MWGraph(std::vector<VertexData> vertices, std::vector<EdgeData> edges, WeightKind kind)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), kind_(kind) {
    const auto n = vertices_.size();
    incidence_.assign(n, {});
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        auto& e = edges_[i];
        if (e.tail.index >= n || e.head.index >= n)
            fail(ErrorCode::DanglingEndpoint, "edge '" + e.name + "' references a missing vertex");
        if (!std::isfinite(e.alpha)) fail(ErrorCode::InvalidArgument, "edge '" + e.name + "' has non-finite potential");
        e.alpha = canonicalAngle(e.alpha);
        incidence_[e.tail.index].push_back({EdgeId{i}, false});
        incidence_[e.head.index].push_back({EdgeId{i}, true});
    }
    switch (kind_) {
        case WeightKind::Combinatorial:
            for (auto& v : vertices_) v.weight = 1.0;
            for (auto& e : edges_) e.weight = 1.0;
            break;
        case WeightKind::Standard:
            for (auto& e : edges_) e.weight = 1.0;
            for (std::size_t v = 0; v < n; ++v) {
                auto d = incidence_[v].size();
                vertices_[v].weight = d == 0 ? 1.0 : static_cast<double>(d);
            }
            break;
        case WeightKind::Custom:
            break;
    }
    for (const auto& v : vertices_)
        if (!(v.weight > 0.0) || !std::isfinite(v.weight))
            fail(ErrorCode::NonPositiveWeight, "vertex '" + v.name + "' has non-positive weight");
    for (const auto& e : edges_)
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            fail(ErrorCode::NonPositiveWeight, "edge '" + e.name + "' has non-positive weight");
}

std::optional<VertexId> MWGraph::findVertex(std::string_view name) const {
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].name == name) return VertexId{i};
    return std::nullopt;
}

std::optional<EdgeId> MWGraph::findEdge(std::string_view name) const {
    for (std::uint32_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].name == name) return EdgeId{i};
    return std::nullopt;
}

VertexId MWGraph::vertexByName(std::string_view name) const {
    if (auto v = findVertex(name)) return *v;
    fail(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
}

EdgeId MWGraph::edgeByName(std::string_view name) const {
    if (auto e = findEdge(name)) return *e;
    fail(ErrorCode::UnknownEdge, "unknown edge '" + std::string(name) + "'");
}

double MWGraph::weightedDegree(VertexId v) const {
    double s = 0.0;
    for (auto oe : outgoing(v)) s += edge(oe.edge).weight;
    return s;
}

double MWGraph::maxRelativeWeight() const {
    double m = 0.0;
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) m = std::max(m, relativeWeight(VertexId{i}));
    return m;
}

std::vector<EdgeId> MWGraph::edgesBetween(VertexId u, VertexId v) const {
    std::vector<EdgeId> out;
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if ((e.tail == u && e.head == v) || (e.tail == v && e.head == u)) out.push_back(EdgeId{i});
    }
    return out;
}

std::vector<double> MWGraph::potentials() const {
    std::vector<double> a;
    a.reserve(edges_.size());
    for (const auto& e : edges_) a.push_back(e.alpha);
    return a;
}

MWGraph buildGraph(const std::vector<VertexSpec>& vertices, const std::vector<EdgeSpec>& edges,
                   WeightKind kind) {
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<VertexData> vs;
    vs.reserve(vertices.size());
    for (const auto& v : vertices) {
        if (!index.emplace(v.name, static_cast<std::uint32_t>(vs.size())).second)
            fail(ErrorCode::DuplicateId, "duplicate vertex id '" + v.name + "'");
        if (v.weight && !(*v.weight > 0.0))
            fail(ErrorCode::NonPositiveWeight, "vertex '" + v.name + "' has non-positive weight");
        if (kind == WeightKind::Combinatorial && v.weight && *v.weight != 1.0)
            fail(ErrorCode::InconsistentWeight, "vertex '" + v.name + "' weight contradicts combinatorial weights");
        vs.push_back({v.name, v.weight.value_or(1.0)});
    }
    std::set<std::string> edgeNames;
    std::vector<EdgeData> es;
    es.reserve(edges.size());
    for (const auto& e : edges) {
        if (!edgeNames.insert(e.name).second) fail(ErrorCode::DuplicateId, "duplicate edge id '" + e.name + "'");
        auto t = index.find(e.tail);
        auto h = index.find(e.head);
        if (t == index.end() || h == index.end())
            fail(ErrorCode::DanglingEndpoint, "edge '" + e.name + "' references a missing vertex");
        if (e.weight && !(*e.weight > 0.0))
            fail(ErrorCode::NonPositiveWeight, "edge '" + e.name + "' has non-positive weight");
        if (kind != WeightKind::Custom && e.weight && *e.weight != 1.0)
            fail(ErrorCode::InconsistentWeight, "edge '" + e.name + "' weight contradicts " +
                                                    std::string(weightKindName(kind)) + " weights");
        es.push_back({e.name, VertexId{t->second}, VertexId{h->second}, e.weight.value_or(1.0), e.alpha});
    }
    MWGraph g(std::move(vs), std::move(es), kind);
    if (kind == WeightKind::Standard) {
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const auto& w = vertices[i].weight;
            if (w && *w != g.vertex(VertexId{static_cast<std::uint32_t>(i)}).weight)
                fail(ErrorCode::InconsistentWeight,
                     "vertex '" + vertices[i].name + "' weight contradicts standard weights");
        }
    }
    return g;
}

MWGraph withWeightKind(const MWGraph& g, WeightKind kind) {
    return MWGraph(g.vertices(), g.edges(), kind);
}

MWGraph withVertexWeights(const MWGraph& g, std::span<const double> weights) {
    if (weights.size() != g.vertexCount()) fail(ErrorCode::PartialMap, "vertex weight vector has wrong length");
    auto vs = g.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i].weight = weights[i];
    return MWGraph(std::move(vs), g.edges(), WeightKind::Custom);
}

MWGraph withPotential(const MWGraph& g, std::span<const double> alpha) {
    if (alpha.size() != g.edgeCount()) fail(ErrorCode::PartialMap, "potential vector has wrong length");
    auto es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i) es[i].alpha = alpha[i];
    return MWGraph(g.vertices(), std::move(es), g.weightKind());
}

MWGraph deleteEdges(const MWGraph& g, std::span<const EdgeId> removed, WeightKind target) {
    std::vector<bool> drop(g.edgeCount(), false);
    for (auto e : removed) {
        if (e.index >= g.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
        drop[e.index] = true;
    }
    std::vector<EdgeData> es;
    for (std::size_t i = 0; i < g.edgeCount(); ++i)
        if (!drop[i]) es.push_back(g.edges()[i]);
    return MWGraph(g.vertices(), std::move(es), target);
}

MWGraph deleteEdge(const MWGraph& g, EdgeId e0, WeightKind target) {
    return deleteEdges(g, std::span<const EdgeId>(&e0, 1), target);
}

MWGraph addEdge(const MWGraph& g, const EdgeData& e, WeightKind target) {
    if (g.findEdge(e.name)) fail(ErrorCode::DuplicateId, "duplicate edge id '" + e.name + "'");
    auto es = g.edges();
    es.push_back(e);
    return MWGraph(g.vertices(), std::move(es), target);
}

MWGraph contractVertices(const MWGraph& g, const VertexPartition& part, WeightKind target) {
    const auto n = g.vertexCount();
    std::vector<int> blockOf(n, -1);
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
        if (part.blocks[b].empty()) fail(ErrorCode::EmptyVertexSet, "empty block in vertex partition");
        for (auto v : part.blocks[b]) {
            if (v.index >= n) fail(ErrorCode::UnknownVertex, "vertex index out of range");
            if (blockOf[v.index] != -1) fail(ErrorCode::OverlappingBlocks, "vertex '" + g.vertex(v).name + "' appears in two blocks");
            blockOf[v.index] = static_cast<int>(b);
        }
    }
    // A merged vertex sits at the position of its first member.
    std::vector<std::uint32_t> newIndex(n);
    std::vector<VertexData> vs;
    std::vector<int> blockTarget(part.blocks.size(), -1);
    for (std::size_t v = 0; v < n; ++v) {
        int b = blockOf[v];
        if (b < 0) {
            newIndex[v] = static_cast<std::uint32_t>(vs.size());
            vs.push_back(g.vertices()[v]);
        } else if (blockTarget[b] < 0) {
            blockTarget[b] = static_cast<int>(vs.size());
            newIndex[v] = static_cast<std::uint32_t>(vs.size());
            auto members = part.blocks[b];
            std::sort(members.begin(), members.end());
            VertexData merged{"", 0.0};
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i) merged.name += "+";
                merged.name += g.vertex(members[i]).name;
                merged.weight += g.vertex(members[i]).weight;
            }
            vs.push_back(std::move(merged));
        } else {
            newIndex[v] = static_cast<std::uint32_t>(blockTarget[b]);
        }
    }
    auto es = g.edges();
    for (auto& e : es) {
        e.tail = VertexId{newIndex[e.tail.index]};
        e.head = VertexId{newIndex[e.head.index]};
    }
    return MWGraph(std::move(vs), std::move(es), target);
}

MWGraph contractEdge(const MWGraph& g, EdgeId e0, WeightKind target) {
    if (e0.index >= g.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    if (g.isLoop(e0)) fail(ErrorCode::LoopContraction, "cannot contract loop '" + g.edge(e0).name + "'");
    const auto& e = g.edge(e0);
    auto reduced = deleteEdge(g, e0, g.weightKind());
    return contractVertices(reduced, VertexPartition{{{e.tail, e.head}}}, target);
}

MWGraph deleteVertex(const MWGraph& g, VertexId v0, WeightKind target) {
    if (v0.index >= g.vertexCount()) fail(ErrorCode::UnknownVertex, "vertex index out of range");
    for (auto oe : g.outgoing(v0))
        if (g.isLoop(oe.edge)) fail(ErrorCode::LoopAtVertex, "vertex '" + g.vertex(v0).name + "' carries a loop");
    std::vector<VertexData> vs;
    for (std::size_t i = 0; i < g.vertexCount(); ++i)
        if (i != v0.index) vs.push_back(g.vertices()[i]);
    auto shift = [&](VertexId v) { return VertexId{v.index > v0.index ? v.index - 1 : v.index}; };
    std::vector<EdgeData> es;
    for (const auto& e : g.edges()) {
        if (e.tail == v0 || e.head == v0) continue;
        auto copy = e;
        copy.tail = shift(e.tail);
        copy.head = shift(e.head);
        es.push_back(std::move(copy));
    }
    return MWGraph(std::move(vs), std::move(es), target);
}

MWGraph inducedSubgraph(const MWGraph& g, std::span<const VertexId> subset) {
    if (subset.empty()) fail(ErrorCode::EmptyVertexSet, "induced subgraph needs at least one vertex");
    std::vector<std::int64_t> newIndex(g.vertexCount(), -1);
    std::vector<VertexId> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<VertexData> vs;
    for (auto v : sorted) {
        if (v.index >= g.vertexCount()) fail(ErrorCode::UnknownVertex, "vertex index out of range");
        if (newIndex[v.index] >= 0) continue;
        newIndex[v.index] = static_cast<std::int64_t>(vs.size());
        vs.push_back(g.vertex(v));
    }
    std::vector<EdgeData> es;
    for (const auto& e : g.edges()) {
        auto t = newIndex[e.tail.index], h = newIndex[e.head.index];
        if (t < 0 || h < 0) continue;
        auto copy = e;
        copy.tail = VertexId{static_cast<std::uint32_t>(t)};
        copy.head = VertexId{static_cast<std::uint32_t>(h)};
        es.push_back(std::move(copy));
    }
    return MWGraph(std::move(vs), std::move(es), WeightKind::Custom);
}

MWGraph gaugeTransform(const MWGraph& g, std::span<const double> xi) {
    if (xi.size() != g.vertexCount()) fail(ErrorCode::PartialMap, "gauge needs one angle per vertex");
    auto es = g.edges();
    for (auto& e : es) e.alpha = normalizeAngle(e.alpha + xi[e.head.index] - xi[e.tail.index]);
    return MWGraph(g.vertices(), std::move(es), g.weightKind());
}

std::vector<double> spanningForestGauge(const MWGraph& g) {
    const auto n = g.vertexCount();
    std::vector<double> xi(n, 0.0);
    std::vector<bool> seen(n, false);
    for (std::uint32_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::queue<std::uint32_t> q;
        q.push(root);
        while (!q.empty()) {
            auto v = q.front();
            q.pop();
            for (auto oe : g.outgoing(VertexId{v})) {
                auto u = g.head(oe).index;
                if (seen[u]) continue;
                seen[u] = true;
                // α(oe) = ξ(u) − ξ(v) along tree edges
                xi[u] = xi[v] + g.alpha(oe);
                q.push(u);
            }
        }
    }
    return xi;
}

double residualFlux(const MWGraph& g) {
    auto xi = spanningForestGauge(g);
    double worst = 0.0;
    for (const auto& e : g.edges())
        worst = std::max(worst, angleDistance(e.alpha, xi[e.head.index] - xi[e.tail.index]));
    return worst;
}

bool isTrivialPotential(const MWGraph& g, double tol) { return residualFlux(g) <= tol; }

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

int componentCountWithout(const MWGraph& g, std::optional<EdgeId> skipped) {
    UnionFind uf(g.vertexCount());
    int count = static_cast<int>(g.vertexCount());
    for (std::uint32_t i = 0; i < g.edgeCount(); ++i) {
        if (skipped && skipped->index == i) continue;
        const auto& e = g.edges()[i];
        if (uf.unite(e.tail.index, e.head.index)) --count;
    }
    return count;
}

std::vector<int> connectedComponents(const MWGraph& g, int* count) {
    UnionFind uf(g.vertexCount());
    for (const auto& e : g.edges()) uf.unite(e.tail.index, e.head.index);
    std::vector<int> label(g.vertexCount(), -1);
    std::map<std::uint32_t, int> rootLabel;
    for (std::uint32_t v = 0; v < g.vertexCount(); ++v) {
        auto [it, inserted] = rootLabel.emplace(uf.find(v), static_cast<int>(rootLabel.size()));
        label[v] = it->second;
    }
    if (count) *count = static_cast<int>(rootLabel.size());
    return label;
}

bool isConnected(const MWGraph& g) { return componentCountWithout(g, std::nullopt) <= 1; }

bool isBridge(const MWGraph& g, EdgeId e) {
    if (e.index >= g.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    return componentCountWithout(g, e) > componentCountWithout(g, std::nullopt);
}

bool isSimple(const MWGraph& g) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& e : g.edges()) {
        if (e.tail == e.head) return false;
        auto key = std::minmax(e.tail.index, e.head.index);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

bool isPendantEdge(const MWGraph& g, EdgeId e) {
    if (e.index >= g.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    if (g.isLoop(e)) return false;
    const auto& d = g.edge(e);
    return g.degree(d.tail) == 1 || g.degree(d.head) == 1;
}

}  // namespace mwg
