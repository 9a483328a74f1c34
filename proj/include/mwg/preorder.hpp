#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwg/graph.hpp"
#include "mwg/homomorphism.hpp"
#include "mwg/spectra.hpp"

namespace mwg {

enum class WeightClass { Combinatorial, Standard, General };
enum class RelationKind { Geometric, SpectralShift };
enum class PerturbationOp { DeleteEdge, ContractVertices, ContractEdge, ContractPendant, DeleteVertex, Minor };

/// Hypothesis variants of the general-weight edge deletion result.
///   A1: w'_e ≤ w_e and w(v) ≤ w'(v) everywhere          → W' ⊑ W
///   A2: as A1 off the endpoints, w(v) − w_{e0} ≤ w'(v) on them, ρ∞ ≤ 1 → W' ≼₁ W
///   B:  w_e ≤ w'_e and w'(v) ≤ w(v) everywhere           → W ≼₁ W'
///   C:  weights unchanged and e0 a loop with α = 0      → isospectral
enum class GeneralBranch { A1, A2, B, C };

std::string_view weightClassName(WeightClass c);
WeightClass parseWeightClass(std::string_view name);
std::string_view operationName(PerturbationOp op);

/// "lhs ≼_shift rhs" (SpectralShift) or "lhs ⊑ rhs" (Geometric, which
/// also implies the shift-0 spectral relation and is checked as such).
struct CertifiedRelation {
    std::string lhs;
    std::string rhs;
    RelationKind kind = RelationKind::SpectralShift;
    int shift = 0;
    int minimalShift = 0;
    std::string resultTag;
    bool numericallyVerified = false;
    double tolerance = 1e-9;
};

struct PerturbationCertificate {
    PerturbationOp operation = PerturbationOp::DeleteEdge;
    std::vector<std::string> parameters;
    WeightClass weightClass = WeightClass::Combinatorial;
    std::vector<CertifiedRelation> relations;
    std::optional<int> r;
    std::optional<int> s;
    std::string branch;

    /// Guaranteed shifts of W ≼ W' and W' ≼ W (the two relations between
    /// the original and perturbed graph, whichever are present).
    std::optional<int> forwardShift() const;
    std::optional<int> backwardShift() const;
};

struct PerturbationResult {
    MWGraph graph;
    PerturbationCertificate certificate;
};

struct CertifyOptions {
    double tol = 1e-9;
    std::optional<GeneralBranch> branch;
    // General class only: vertex weights of the perturbed graph. Defaults to
    // keeping the original weights (summed on merged vertices).
    std::optional<std::vector<double>> vertexWeights;
};

PerturbationResult certifyDeleteEdge(const MWGraph& w, EdgeId e0, WeightClass wc, const CertifyOptions& opt = {});
PerturbationResult certifyContractVertices(const MWGraph& w, VertexId v1, VertexId v2, WeightClass wc,
                                           const CertifyOptions& opt = {});
PerturbationResult certifyContractEdge(const MWGraph& w, EdgeId e0, WeightClass wc, const CertifyOptions& opt = {});
PerturbationResult certifyContractPendant(const MWGraph& w, EdgeId e0, WeightClass wc,
                                          const CertifyOptions& opt = {});
PerturbationResult certifyDeleteVertex(const MWGraph& w, VertexId v0, WeightClass wc, const CertifyOptions& opt = {});

/// W − E0 ≼₀ W for combinatorial W. Throws NotCombinatorial.
CertifiedRelation spanningSubgraphMonotone(const MWGraph& w, const std::vector<EdgeId>& removed, double tol = 1e-9);

/// Maximum clique of the underlying simple graph (loops ignored,
/// parallel edges collapsed). Throws SizeLimitExceeded above 16 vertices.
int cliqueNumber(const MWGraph& g);

struct CliqueBound {
    int d = 0;
    int multiplicityLowerBound = 0;
    int observedMultiplicity = 0;
};

/// Returns nullopt when m ≥ (d−1)(d+2)/2. Throws Disconnected,
/// NotCombinatorial, NonzeroPotential, SizeLimitExceeded, and
/// CertificateViolation if the spectrum contradicts the bound.
std::optional<CliqueBound> cliqueMultiplicityBound(const MWGraph& g, double tol = 1e-8);

/// True when the data certify that the graph has no d-clique.
bool excludeClique(const Spectrum& spectrum, int d, int m, double tol = 1e-8);

enum class MinorStepKind { DeleteEdge, ContractEdge, DeletePendantVertex };

struct MinorStep {
    MinorStepKind kind;
    std::string target;  // edge name, or vertex name for DeletePendantVertex
};

struct MinorCertificate {
    PerturbationCertificate certificate;
    std::vector<PerturbationCertificate> steps;
    int p = 0, q = 0, s = 0, bridges = 0, r = 0;
    /// (eigenvalue, multiplicity in W, guaranteed multiplicity in W', observed in W')
    struct Persistence {
        double lambda;
        int multiplicity;
        int guaranteed;
        int observed;
    };
    std::vector<Persistence> persistent;
};

struct MinorResult {
    MWGraph graph;
    MinorCertificate certificate;
};

MinorResult certifyMinor(const MWGraph& w, const std::vector<MinorStep>& script, WeightClass wc,
                         double tol = 1e-9);

/// Checks that `rel` holds between the spectra of lhs and rhs. Returns the
/// relation with minimalShift filled in and numericallyVerified set; throws
/// CertificateViolation otherwise.
CertifiedRelation verifyRelation(CertifiedRelation rel, const Spectrum& lhs, const Spectrum& rhs);

}  // namespace mwg
