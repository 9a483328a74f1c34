#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mwg/graph.hpp"
#include "mwg/homomorphism.hpp"

namespace mwg {

/// Which subgroup τ ranges over. Auto picks Signed when every α is 0 or π.
enum class PotentialRange { Auto, Signed, Circle };

/// ExactSigned: exhaustive over {0,π}^V.
/// SpanningForest: exact minimum over the circle, found among the phase
///   vectors that make some spanning forest frustration-free.
/// GridDescent: multi-start coordinate descent; an upper bound only.
enum class FrustrationMethod { ExactSigned, SpanningForest, GridDescent };

std::string_view frustrationMethodName(FrustrationMethod m);

struct FrustrationResult {
    double value = 0.0;
    std::vector<double> minimizer;
    FrustrationMethod method = FrustrationMethod::ExactSigned;
    bool certifiedExact = false;
};

struct FrustrationOptions {
    PotentialRange range = PotentialRange::Auto;
    std::size_t signedVertexCap = 24;
    double forestEnumerationCap = 2e5;
    int restarts = 40;
    int gridPoints = 16;
    double convergenceTol = 1e-10;
    std::uint64_t seed = 0x5eed;
};

/// ι(W,τ) = Σ over unoriented edges of w_e |e^{iτ(∂₊e)} − e^{−iα_e} e^{iτ(∂₋e)}|.
double frustration(const MWGraph& g, const std::vector<double>& tau);

FrustrationResult frustrationIndex(const MWGraph& g, const FrustrationOptions& opt = {});

/// w of the unoriented edges with exactly one endpoint in V0.
double boundaryWeight(const MWGraph& g, std::uint64_t mask);

struct SetCheeger {
    double value = 0.0;
    double frustration = 0.0;
    double boundary = 0.0;
    double weight = 0.0;
    bool certified = true;
    FrustrationMethod method = FrustrationMethod::ExactSigned;
};

SetCheeger cheegerOfSet(const MWGraph& g, const std::vector<VertexId>& subset, const FrustrationOptions& opt = {});

struct CheegerResult {
    int k = 0;
    double value = 0.0;
    VertexPartition subpartition;
    std::vector<double> blockValues;
    bool certified = true;
    FrustrationMethod method = FrustrationMethod::ExactSigned;
};

struct CheegerOptions {
    FrustrationOptions frustration;
    std::size_t capSmallK = 12;  // k ≤ 3
    std::size_t capLargeK = 10;
    double tieTolerance = 1e-12;
};

CheegerResult cheegerConstant(const MWGraph& g, int k, const CheegerOptions& opt = {});

/// min over proper V0 of w(E(V0, V0ᶜ)) / min(w(V0), w(V0ᶜ)).
double classicalCheeger(const MWGraph& g);

/// h_k(source) ≤ h_k(target) + tol for k = 1..kMax. Throws NotAHomomorphism.
bool checkCheegerMonotonicity(const MWHom& hom, const MWGraph& source, const MWGraph& target, int kMax,
                              const CheegerOptions& opt = {}, double tol = 1e-9);

struct CheegerInequality {
    int k = 0;
    double lambda = 0.0;
    double h = 0.0;
    double lower = 0.0;  // λ_k / 2
    double upper = 0.0;  // C k³ √(ρ∞ λ_k)
    double constant = 0.0;
    bool holds = false;
};

/// k = 1 (C = 1) or k = 2 with trivial potential (C = √2/4).
CheegerInequality checkCheegerInequalities(const MWGraph& g, int k, const CheegerOptions& opt = {}, double tol = 1e-9);

}  // namespace mwg
