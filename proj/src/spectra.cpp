#include "mwg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "mwg/error.hpp"

namespace mwg {

using cd = std::complex<double>;

std::vector<std::pair<double, int>> Spectrum::grouped() const {
    std::vector<std::pair<double, int>> out;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i + 1;
        while (j < values.size() && values[j] - values[j - 1] <= tolerance * std::max(1.0, std::abs(values[j])))
            ++j;
        double mean = 0.0;
        for (std::size_t k = i; k < j; ++k) mean += values[k];
        out.emplace_back(mean / static_cast<double>(j - i), static_cast<int>(j - i));
        i = j;
    }
    return out;
}

int Spectrum::multiplicity(double lambda, double tol) const {
    int m = 0;
    for (double v : values)
        if (std::abs(v - lambda) <= tol * std::max(1.0, std::abs(lambda))) ++m;
    return m;
}

HermitianOperator assembleLaplacian(const MWGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.vertexCount());
    if (n == 0) fail(ErrorCode::EmptyGraph, "graph has no vertices");
    HermitianOperator op;
    op.matrix = ComplexMatrix::Zero(n, n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const double wv = g.vertex(VertexId{v}).weight;
        op.labels.push_back(g.vertex(VertexId{v}).name);
        op.vertexWeights.push_back(wv);
        for (auto oe : g.outgoing(VertexId{v})) {
            const double we = g.edge(oe.edge).weight;
            const auto u = g.head(oe).index;
            op.matrix(v, v) += we / wv;
            cd phase = std::polar(1.0, g.alpha(oe));
            op.matrix(v, u) -= we * phase / std::sqrt(wv * g.vertex(VertexId{u}).weight);
        }
    }
    // Loops put (1 - e^{iα}) + (1 - e^{-iα}) on the diagonal; scrub the rounding residue.
    for (Eigen::Index v = 0; v < n; ++v) op.matrix(v, v) = op.matrix(v, v).real();
    return op;
}

ComplexMatrix exteriorDerivative(const MWGraph& g) {
    ComplexMatrix d = ComplexMatrix::Zero(static_cast<Eigen::Index>(g.edgeCount()),
                                          static_cast<Eigen::Index>(g.vertexCount()));
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        const auto& e = g.edges()[static_cast<std::size_t>(i)];
        d(i, e.head.index) += std::polar(1.0, e.alpha / 2);
        d(i, e.tail.index) -= std::polar(1.0, -e.alpha / 2);
    }
    return d;
}

ComplexMatrix laplacianMatrix(const MWGraph& g) {
    auto op = assembleLaplacian(g);
    const auto n = op.matrix.rows();
    ComplexMatrix m = op.matrix;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) *= std::sqrt(op.vertexWeights[j] / op.vertexWeights[i]);
    return m;
}

Eigensystem eigensystem(const ComplexMatrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) fail(ErrorCode::EmptyGraph, "operator must be square and nonempty");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        fail(ErrorCode::NotHermitian, "operator is not Hermitian");
    ComplexMatrix h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "eigensolver did not converge");
    Eigensystem out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.vectors = solver.eigenvectors();
    const double norm = std::max(1.0, h.norm());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        double residual = (h * out.vectors.col(k) - out.values[k] * out.vectors.col(k)).norm();
        if (residual > 1e-9 * norm)
            fail(ErrorCode::ConvergenceFailure, "eigenpair residual " + std::to_string(residual) + " too large");
    }
    return out;
}

Eigensystem eigensystem(const HermitianOperator& a) { return eigensystem(a.matrix); }

Spectrum eigenvalues(const HermitianOperator& a) {
    Spectrum s;
    s.values = eigensystem(a).values;
    std::sort(s.values.begin(), s.values.end());
    s.sourceOrder = a.dimension();
    return s;
}

Spectrum spectrum(const MWGraph& g) { return eigenvalues(assembleLaplacian(g)); }

ShiftRelation shiftLess(const std::vector<double>& lhs, const std::vector<double>& rhs, int r, double tol) {
    if (r < 0) fail(ErrorCode::NegativeShift, "shift must be nonnegative");
    ShiftRelation rel{r, true, std::nullopt, tol};
    const auto n = static_cast<long>(lhs.size());
    const auto m = static_cast<long>(rhs.size());
    if (n + r < m) {
        rel.holds = false;
        rel.witnessIndex = 0;
        return rel;
    }
    for (long k = 1; k <= m - r; ++k) {
        if (lhs[k - 1] > rhs[k + r - 1] + tol) {
            rel.holds = false;
            rel.witnessIndex = static_cast<std::size_t>(k);
            return rel;
        }
    }
    return rel;
}

ShiftRelation shiftLess(const Spectrum& lhs, const Spectrum& rhs, int r, double tol) {
    return shiftLess(lhs.values, rhs.values, r, tol);
}

int minimalShift(const Spectrum& lhs, const Spectrum& rhs, double tol) {
    const int limit = static_cast<int>(rhs.size());
    for (int r = 0; r < limit; ++r)
        if (shiftLess(lhs, rhs, r, tol).holds) return r;
    return limit;
}

bool isIsospectral(const Spectrum& a, const Spectrum& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

double spanningTreeCount(const MWGraph& g) {
    if (g.weightKind() != WeightKind::Combinatorial) fail(ErrorCode::NotCombinatorial, "needs combinatorial weights");
    for (const auto& e : g.edges())
        if (e.alpha != 0.0) fail(ErrorCode::NonzeroPotential, "needs a vanishing magnetic potential");
    if (!isConnected(g)) fail(ErrorCode::Disconnected, "graph is disconnected");
    auto s = spectrum(g);
    double prod = 1.0;
    for (std::size_t i = 1; i < s.size(); ++i) prod *= s[i];
    return prod / static_cast<double>(s.size());
}

double rayleighQuotient(const HermitianOperator& a, const ComplexVector& phi) {
    const double nrm = phi.squaredNorm();
    if (nrm == 0.0) fail(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
    return phi.dot(a.matrix * phi).real() / nrm;
}

double rayleighQuotient(const MWGraph& g, const ComplexVector& phi) {
    if (phi.size() != static_cast<Eigen::Index>(g.vertexCount()))
        fail(ErrorCode::PartialMap, "vector length differs from vertex count");
    double den = 0.0;
    for (Eigen::Index v = 0; v < phi.size(); ++v) den += g.vertices()[v].weight * std::norm(phi(v));
    if (den == 0.0) fail(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
    ComplexVector dphi = exteriorDerivative(g) * phi;
    double num = 0.0;
    for (Eigen::Index e = 0; e < dphi.size(); ++e) num += g.edges()[e].weight * std::norm(dphi(e));
    return num / den;
}

bool minMaxCheck(const HermitianOperator& a, int k, int sampleCount, std::uint64_t seed, double tol) {
    const auto n = static_cast<int>(a.dimension());
    if (k < 1 || k > n) fail(ErrorCode::IndexOutOfRange, "k must lie in 1..n");
    auto es = eigensystem(a);
    const double lk = es.values[k - 1];
    const double slack = tol * std::max(1.0, a.matrix.norm());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto randomCoeffs = [&](int m) {
        ComplexVector c(m);
        for (int i = 0; i < m; ++i) c(i) = cd(gauss(rng), gauss(rng));
        return c;
    };
    for (int s = 0; s < sampleCount; ++s) {
        ComplexVector low = es.vectors.leftCols(k) * randomCoeffs(k);
        if (rayleighQuotient(a, low) > lk + slack) return false;
        ComplexVector high = es.vectors.rightCols(n - k + 1) * randomCoeffs(n - k + 1);
        if (rayleighQuotient(a, high) < lk - slack) return false;
        // max of R over a random k-dimensional subspace never undercuts λ_k
        ComplexMatrix basis(n, k);
        for (int j = 0; j < k; ++j) basis.col(j) = randomCoeffs(n);
        Eigen::HouseholderQR<ComplexMatrix> qr(basis);
        ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
        ComplexMatrix compressed = q.adjoint() * a.matrix * q;
        compressed = (compressed + compressed.adjoint()).eval() / 2.0;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> small(compressed, Eigen::EigenvaluesOnly);
        if (small.eigenvalues()(k - 1) < lk - slack) return false;
    }
    return true;
}

}  // namespace mwg
