#pragma once

#include <optional>
#include <vector>

#include "mwg/graph.hpp"

namespace mwg {

struct HomFlags {
    bool isGraphHom = false;
    bool preservesPotential = false;
    bool vertexWeightIneq = false;
    bool edgeWeightIneq = false;
    bool vertexMeasurePreserving = false;
    bool edgeMeasurePreserving = false;

    // Set only when the edge map is injective.
    std::optional<bool> degreeSumHolds;

    bool isMWHom() const { return isGraphHom && preservesPotential && vertexWeightIneq && edgeWeightIneq; }
    bool isMeasurePreserving() const { return isMWHom() && vertexMeasurePreserving && edgeMeasurePreserving; }
};

/// Vertex map plus edge map. The edge map sends each stored (canonical)
/// source edge to an oriented target edge; the image of the reverse
/// orientation is the reverse of that, so the map commutes with bar.
struct MWHom {
    std::vector<VertexId> vertexMap;
    std::vector<OrientedEdge> edgeMap;
    HomFlags flags;
};

/// Evaluates every flag of the definition directly. Throws PartialMap when
/// the maps do not cover the source.
MWHom verifyHom(const MWGraph& source, const MWGraph& target, std::vector<VertexId> vertexMap,
                std::vector<OrientedEdge> edgeMap, double tol = 1e-12);

struct HomSearchLimits {
    std::size_t maxSourceVertices = 10;
    double tol = 1e-12;
};

/// Exhaustive search for a map with all four defining properties.
/// Returns nullopt when none exists. Throws SizeLimitExceeded.
std::optional<MWHom> searchHom(const MWGraph& source, const MWGraph& target, HomSearchLimits limits = {});

MWHom identityHom(const MWGraph& source, const MWGraph& target);

/// The quotient map G → G/∼ produced by contractVertices.
MWHom quotientHom(const MWGraph& source, const MWGraph& quotient, const VertexPartition& part);

/// Inclusion of G − E0 into G, edges matched by name.
MWHom inclusionHom(const MWGraph& sub, const MWGraph& whole);

}  // namespace mwg
