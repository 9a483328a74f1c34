#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwg/graph.hpp"
#include "mwg/spectra.hpp"

namespace mwg {

/// Closed interval; `empty` marks an empty intersection.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;

    double width() const { return empty ? 0.0 : hi - lo; }
    bool contains(double x, double slack = 1e-9) const { return !empty && x >= lo - slack && x <= hi + slack; }
};

Interval intersect(const Interval& a, const Interval& b);

/// Sorted, disjoint union; pieces closer than `slack` are merged.
std::vector<Interval> normaliseUnion(std::vector<Interval> pieces, double slack = 1e-9);

/// Open gaps of [lo, hi] not covered by a normalised union.
std::vector<Interval> complementGaps(const std::vector<Interval>& unionPieces, double lo, double hi,
                                     double slack = 1e-9);

/// Quotient of a Z-periodic graph plus the Z-cocycle on stored edges
/// (the reverse orientation carries the negated value implicitly).
struct PeriodicGraph {
    MWGraph quotient;
    std::vector<int> cocycle;
};

MWGraph floquetGraph(const PeriodicGraph& p, double t);

struct BandSweep {
    std::vector<double> ts;
    std::vector<Spectrum> spectra;
    std::vector<double> lower;  // per index min over the sweep
    std::vector<double> upper;  // per index max over the sweep
};

/// t_j = 2π j / (resolution − 1), j = 0..resolution−1.
BandSweep bandSweep(const PeriodicGraph& p, int resolution = 512);

MWGraph virtualiseEdges(const MWGraph& w, const std::vector<EdgeId>& removed);

enum class VertexVirtualisation {
    Dirichlet,  // surviving vertices keep their full weighted degree on the diagonal
    Drop,       // edges into V0 disappear entirely
};

HermitianOperator virtualiseVertices(const MWGraph& w, const std::vector<VertexId>& removed,
                                     VertexVirtualisation mode = VertexVirtualisation::Dirichlet);

struct BracketReport {
    std::vector<Interval> intervals;
    std::vector<Interval> unionPieces;
    std::vector<Interval> gaps;
    std::vector<std::string> methods;
    double rangeLo = 0.0;
    double rangeHi = 0.0;
};

struct BracketOptions {
    int sweepResolution = 512;
    int independenceSamples = 8;
    double independenceTol = 1e-8;
    double containmentTol = 1e-9;
    double slack = 1e-9;
    std::uint64_t seed = 7;
    VertexVirtualisation vertexMode = VertexVirtualisation::Dirichlet;
};

/// Recomputes union and gaps from the intervals.
void finaliseReport(BracketReport& r, double slack = 1e-9);

/// J_k = [λ_k(W⁻), λ_k(W⁺)], W⁻ with E0 virtualised, W⁺ with V0 virtualised.
/// Indices beyond |V⁺| get the upper endpoint 2ρ∞.
BracketReport bracketByVirtualisation(const PeriodicGraph& p, const std::vector<EdgeId>& e0,
                                      const std::vector<VertexId>& v0, const BracketOptions& opt = {});

/// `split` is a periodic graph whose contraction {v1, v2} reproduces p.
/// J'_k = [λ_k(split), λ_{k+1}(split)] under standard weights.
BracketReport bracketByContraction(const PeriodicGraph& p, const PeriodicGraph& split, VertexId v1, VertexId v2,
                                   const BracketOptions& opt = {});

BracketReport intersectBrackets(const std::vector<BracketReport>& reports, double slack = 1e-9);

/// Throws BracketViolation when some swept λ_k(t) leaves J_k.
void checkContainment(const BracketReport& r, const BandSweep& sweep, double tol = 1e-9);

}  // namespace mwg
