#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwg {

struct VertexId {
    std::uint32_t index = 0;
    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// Identifies an unoriented edge, i.e. the pair {e, ē}.
struct EdgeId {
    std::uint32_t index = 0;
    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// An oriented edge: the stored canonical orientation, or its reverse ē.
struct OrientedEdge {
    EdgeId edge;
    bool reversed = false;

    OrientedEdge bar() const { return {edge, !reversed}; }
    friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

enum class WeightKind { Combinatorial, Standard, Custom };

std::string_view weightKindName(WeightKind kind);
WeightKind parseWeightKind(std::string_view name);

struct VertexData {
    std::string name;
    double weight = 1.0;
};

/// One unoriented edge in its canonical orientation tail → head.
/// `alpha` is the potential of that orientation; the reverse carries −alpha.
struct EdgeData {
    std::string name;
    VertexId tail;
    VertexId head;
    double weight = 1.0;
    double alpha = 0.0;
};

/// Magnetic weighted multigraph. Immutable once constructed; every
/// structural operation below returns a new value.
///
/// The involution e ↦ ē is implicit: each stored edge stands for both
/// orientations, which share the weight and carry opposite potentials.
/// Loops are stored once and contribute twice to the degree.
class MWGraph {
public:
    MWGraph() = default;

    /// Validates endpoints and weights, normalises potentials to [−π, π)
    /// and, for Standard/Combinatorial kinds, overwrites the weights with
    /// the derived ones. Isolated vertices under Standard weights get the
    /// placeholder weight 1 and then contribute a bare eigenvalue 0.
    MWGraph(std::vector<VertexData> vertices, std::vector<EdgeData> edges, WeightKind kind);

    std::size_t vertexCount() const { return vertices_.size(); }
    std::size_t edgeCount() const { return edges_.size(); }
    WeightKind weightKind() const { return kind_; }

    const VertexData& vertex(VertexId v) const { return vertices_.at(v.index); }
    const EdgeData& edge(EdgeId e) const { return edges_.at(e.index); }
    const std::vector<VertexData>& vertices() const { return vertices_; }
    const std::vector<EdgeData>& edges() const { return edges_; }

    std::optional<VertexId> findVertex(std::string_view name) const;
    std::optional<EdgeId> findEdge(std::string_view name) const;
    /// Throws UnknownVertex / UnknownEdge.
    VertexId vertexByName(std::string_view name) const;
    EdgeId edgeByName(std::string_view name) const;

    VertexId tail(OrientedEdge e) const { return e.reversed ? edge(e.edge).head : edge(e.edge).tail; }
    VertexId head(OrientedEdge e) const { return e.reversed ? edge(e.edge).tail : edge(e.edge).head; }
    double alpha(OrientedEdge e) const { return e.reversed ? -edge(e.edge).alpha : edge(e.edge).alpha; }
    bool isLoop(EdgeId e) const { return edge(e).tail == edge(e).head; }

    /// E_v: oriented edges starting at v. A loop appears in both orientations.
    const std::vector<OrientedEdge>& outgoing(VertexId v) const { return incidence_.at(v.index); }

    int degree(VertexId v) const { return static_cast<int>(outgoing(v).size()); }
    double weightedDegree(VertexId v) const;
    double relativeWeight(VertexId v) const { return weightedDegree(v) / vertex(v).weight; }
    double maxRelativeWeight() const;

    /// Unoriented edges joining u and v (loops at u when u == v).
    std::vector<EdgeId> edgesBetween(VertexId u, VertexId v) const;

    std::vector<double> potentials() const;

private:
    std::vector<VertexData> vertices_;
    std::vector<EdgeData> edges_;
    std::vector<std::vector<OrientedEdge>> incidence_;
    WeightKind kind_ = WeightKind::Custom;
};

struct VertexSpec {
    std::string name;
    std::optional<double> weight;
};

struct EdgeSpec {
    std::string name;
    std::string tail;
    std::string head;
    std::optional<double> weight;
    double alpha = 0.0;
};

/// Materialises a graph from one representative per unoriented edge.
/// Errors: NonPositiveWeight, DanglingEndpoint, DuplicateId, InconsistentWeight
/// (an explicit weight contradicting a Standard/Combinatorial kind).
MWGraph buildGraph(const std::vector<VertexSpec>& vertices, const std::vector<EdgeSpec>& edges,
                   WeightKind kind);

struct VertexPartition {
    std::vector<std::vector<VertexId>> blocks;
};

MWGraph withWeightKind(const MWGraph& g, WeightKind kind);
MWGraph withVertexWeights(const MWGraph& g, std::span<const double> weights);
MWGraph withPotential(const MWGraph& g, std::span<const double> alpha);

MWGraph deleteEdge(const MWGraph& g, EdgeId e0, WeightKind target);
MWGraph deleteEdges(const MWGraph& g, std::span<const EdgeId> removed, WeightKind target);
MWGraph addEdge(const MWGraph& g, const EdgeData& e, WeightKind target);

/// Quotient G/∼. Every edge survives; edges inside a block become loops.
/// Under Custom weights the merged vertex carries the sum of member weights.
MWGraph contractVertices(const MWGraph& g, const VertexPartition& part, WeightKind target);
MWGraph contractEdge(const MWGraph& g, EdgeId e0, WeightKind target);
MWGraph deleteVertex(const MWGraph& g, VertexId v0, WeightKind target);
MWGraph inducedSubgraph(const MWGraph& g, std::span<const VertexId> subset);

/// α ↦ α + δξ with (δξ)_e = ξ(∂₊e) − ξ(∂₋e).
MWGraph gaugeTransform(const MWGraph& g, std::span<const double> xi);

/// Gauge ξ with (δξ)_e = α_e on the edges of a BFS spanning forest,
/// ξ = 0 at each component root.
std::vector<double> spanningForestGauge(const MWGraph& g);

/// Largest deviation of α − δξ from 0 mod 2π over all edges, for the
/// spanning-forest gauge ξ. Zero exactly when α is trivial.
double residualFlux(const MWGraph& g);

bool isTrivialPotential(const MWGraph& g, double tol = 1e-9);

/// Component label per vertex, labels 0..count-1 in order of first vertex.
std::vector<int> connectedComponents(const MWGraph& g, int* count = nullptr);
bool isConnected(const MWGraph& g);
bool isBridge(const MWGraph& g, EdgeId e);
bool isSimple(const MWGraph& g);
bool isPendantEdge(const MWGraph& g, EdgeId e);
int componentCountWithout(const MWGraph& g, std::optional<EdgeId> skipped);

}  // namespace mwg
