#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mwg/graph.hpp"

namespace mwg {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense Hermitian matrix acting on ℓ²(V) after the similarity
/// W^{1/2} Δ W^{-1/2}. Rows follow the vertex order of the source graph.
struct HermitianOperator {
    ComplexMatrix matrix;
    std::vector<std::string> labels;
    std::vector<double> vertexWeights;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
};

struct Spectrum {
    std::vector<double> values;  // ascending, repeated by multiplicity
    std::size_t sourceOrder = 0;
    double tolerance = 1e-8;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    /// Consecutive values closer than tolerance·max(1,|λ|) share a group.
    std::vector<std::pair<double, int>> grouped() const;
    int multiplicity(double lambda, double tol = 1e-8) const;
};

struct Eigensystem {
    std::vector<double> values;
    ComplexMatrix vectors;  // column k is the eigenvector for values[k]
};

/// Witness convention: index k (1-based) of the first violated inequality,
/// or 0 when the length condition |Λ| + r ≥ |Λ′| already fails.
struct ShiftRelation {
    int r = 0;
    bool holds = false;
    std::optional<std::size_t> witnessIndex;
    double tolerance = 1e-9;
};

HermitianOperator assembleLaplacian(const MWGraph& g);

/// d_α as an |E|×|V| matrix, one row per stored edge orientation:
/// (dφ)_e = e^{iα/2} φ(∂₊e) − e^{−iα/2} φ(∂₋e).
ComplexMatrix exteriorDerivative(const MWGraph& g);

/// Δ_α in the unsymmetrised vertex basis, i.e. acting on ℓ²(V, w).
ComplexMatrix laplacianMatrix(const MWGraph& g);

Eigensystem eigensystem(const HermitianOperator& a);
Eigensystem eigensystem(const ComplexMatrix& a);
Spectrum eigenvalues(const HermitianOperator& a);
Spectrum spectrum(const MWGraph& g);

ShiftRelation shiftLess(const Spectrum& lhs, const Spectrum& rhs, int r, double tol = 1e-9);
ShiftRelation shiftLess(const std::vector<double>& lhs, const std::vector<double>& rhs, int r, double tol = 1e-9);
/// Smallest r for which lhs ≼_r rhs holds. Always exists (r = |rhs| works).
int minimalShift(const Spectrum& lhs, const Spectrum& rhs, double tol = 1e-9);
bool isIsospectral(const Spectrum& a, const Spectrum& b, double tol = 1e-9);

double spanningTreeCount(const MWGraph& g);

double rayleighQuotient(const HermitianOperator& a, const ComplexVector& phi);
/// ‖d_α φ‖² / ‖φ‖² in the weighted norms, φ given in the vertex basis.
double rayleighQuotient(const MWGraph& g, const ComplexVector& phi);

/// Randomised Courant–Fischer check for λ_k (1-based).
bool minMaxCheck(const HermitianOperator& a, int k, int sampleCount, std::uint64_t seed = 1, double tol = 1e-9);

}  // namespace mwg
