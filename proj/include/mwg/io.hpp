#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mwg/cheeger.hpp"
#include "mwg/covering.hpp"
#include "mwg/graph.hpp"
#include "mwg/homomorphism.hpp"
#include "mwg/preorder.hpp"
#include "mwg/spectra.hpp"

namespace mwg {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// A graph file: the graph plus the optional per-edge Z-cocycle that turns
/// it into the quotient of a periodic graph.
struct GraphDocument {
    MWGraph graph;
    std::vector<int> cocycle;  // empty when the file carries none

    bool periodic() const { return !cocycle.empty(); }
    PeriodicGraph asPeriodic() const;
};

GraphDocument parseGraphDocument(std::string_view text);
GraphDocument loadGraphDocument(const std::string& path);
MWGraph loadGraph(const std::string& path);

/// Doubles are written in shortest round-trip form, so Custom weights and
/// potentials survive load → save → load bit for bit.
std::string serializeGraph(const MWGraph& g, const std::vector<int>& cocycle = {});
void saveGraph(const std::string& path, const MWGraph& g, const std::vector<int>& cocycle = {});

std::string readTextFile(const std::string& path);

/// %.15g with negative zero printed as 0.
std::string formatNumber(double x);
/// Eigenvalues below 1e-12 in magnitude print as 0.
std::string formatEigenvalue(double x);
/// x rounded to 15 significant digits (what formatNumber would print).
double round15(double x);

std::string dumpJson(const Json& j);

std::string spectrumCsv(const Spectrum& s);
Json spectrumJson(const Spectrum& s);

Json shiftJson(const ShiftRelation& rel, int minimal);
Json relationJson(const CertifiedRelation& rel);
Json certificateJson(const PerturbationCertificate& cert);
Json minorJson(const MinorCertificate& cert);
Json homJson(const MWHom& hom, const MWGraph& source, const MWGraph& target);
Json frustrationJson(const FrustrationResult& r, const MWGraph& g);
Json cheegerJson(const CheegerResult& r, const MWGraph& g);
Json cheegerInequalityJson(const CheegerInequality& r);
Json cliqueJson(const std::optional<CliqueBound>& b, int cliqueNumber, int edges);

Json bracketJson(const BracketReport& r);
BracketReport parseBracketJson(std::string_view text);
BracketReport loadBracket(const std::string& path);

/// One row per sample: t, λ_1..λ_n.
std::string bandCsv(const BandSweep& sweep);
std::string gapSummary(const BracketReport& r);

}  // namespace mwg
