#include "mwg/covering.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mwg/angle.hpp"
#include "mwg/error.hpp"

namespace mwg {

Interval intersect(const Interval& a, const Interval& b) {
    if (a.empty || b.empty) return {0.0, 0.0, true};
    Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi), false};
    if (r.lo > r.hi) return {r.lo, r.hi, true};
    return r;
}

std::vector<Interval> normaliseUnion(std::vector<Interval> pieces, double slack) {
    pieces.erase(std::remove_if(pieces.begin(), pieces.end(), [](const Interval& i) { return i.empty; }),
                 pieces.end());
    std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    std::vector<Interval> out;
    for (const auto& p : pieces) {
        if (!out.empty() && p.lo <= out.back().hi + slack)
            out.back().hi = std::max(out.back().hi, p.hi);
        else
            out.push_back(p);
    }
    return out;
}

std::vector<Interval> complementGaps(const std::vector<Interval>& pieces, double lo, double hi, double slack) {
    std::vector<Interval> gaps;
    double cursor = lo;
    for (const auto& p : pieces) {
        if (p.lo > cursor + slack) gaps.push_back({cursor, p.lo, false});
        cursor = std::max(cursor, p.hi);
    }
    if (hi > cursor + slack) gaps.push_back({cursor, hi, false});
    return gaps;
}

MWGraph floquetGraph(const PeriodicGraph& p, double t) {
    if (p.cocycle.size() != p.quotient.edgeCount()) fail(ErrorCode::PartialMap, "cocycle needs one value per edge");
    auto alpha = p.quotient.potentials();
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] += t * p.cocycle[i];
    return withPotential(p.quotient, alpha);
}

BandSweep bandSweep(const PeriodicGraph& p, int resolution) {
    if (resolution < 2) fail(ErrorCode::InvalidArgument, "sweep resolution must be at least 2");
    BandSweep s;
    const auto n = p.quotient.vertexCount();
    s.lower.assign(n, std::numeric_limits<double>::infinity());
    s.upper.assign(n, -std::numeric_limits<double>::infinity());
    for (int j = 0; j < resolution; ++j) {
        double t = kTwoPi * j / (resolution - 1);
        auto sp = spectrum(floquetGraph(p, t));
        for (std::size_t k = 0; k < n; ++k) {
            s.lower[k] = std::min(s.lower[k], sp[k]);
            s.upper[k] = std::max(s.upper[k], sp[k]);
        }
        s.ts.push_back(t);
        s.spectra.push_back(std::move(sp));
    }
    return s;
}

MWGraph virtualiseEdges(const MWGraph& w, const std::vector<EdgeId>& removed) {
    auto custom = w.weightKind() == WeightKind::Custom ? w : withWeightKind(w, WeightKind::Custom);
    return deleteEdges(custom, removed, WeightKind::Custom);
}

HermitianOperator virtualiseVertices(const MWGraph& w, const std::vector<VertexId>& removed,
                                     VertexVirtualisation mode) {
    std::vector<bool> gone(w.vertexCount(), false);
    for (auto v : removed) {
        if (v.index >= w.vertexCount()) fail(ErrorCode::UnknownVertex, "vertex index out of range");
        gone[v.index] = true;
    }
    std::vector<VertexId> keep;
    for (std::uint32_t v = 0; v < w.vertexCount(); ++v)
        if (!gone[v]) keep.push_back(VertexId{v});
    if (keep.empty()) fail(ErrorCode::AllVerticesVirtualised, "cannot virtualise every vertex");

    if (mode == VertexVirtualisation::Drop) {
        auto sub = inducedSubgraph(w, keep);
        return assembleLaplacian(sub);
    }
    auto full = assembleLaplacian(w);
    HermitianOperator op;
    const auto m = static_cast<Eigen::Index>(keep.size());
    op.matrix.resize(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        op.labels.push_back(full.labels[keep[i].index]);
        op.vertexWeights.push_back(full.vertexWeights[keep[i].index]);
        for (Eigen::Index j = 0; j < m; ++j) op.matrix(i, j) = full.matrix(keep[i].index, keep[j].index);
    }
    return op;
}

void finaliseReport(BracketReport& r, double slack) {
    r.unionPieces = normaliseUnion(r.intervals, slack);
    r.gaps = complementGaps(r.unionPieces, r.rangeLo, r.rangeHi, slack);
}

void checkContainment(const BracketReport& r, const BandSweep& sweep, double tol) {
    for (std::size_t j = 0; j < sweep.spectra.size(); ++j) {
        const auto& sp = sweep.spectra[j];
        for (std::size_t k = 0; k < std::min(sp.size(), r.intervals.size()); ++k) {
            if (!r.intervals[k].contains(sp[k], tol))
                fail(ErrorCode::BracketViolation, "lambda_" + std::to_string(k + 1) + "(t=" + std::to_string(sweep.ts[j]) +
                                                      ") = " + std::to_string(sp[k]) + " escapes its bracket");
        }
    }
}

namespace {

std::vector<double> sampleTs(const BracketOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    std::vector<double> ts{0.0};
    for (int i = 0; i < opt.independenceSamples; ++i) ts.push_back(uni(rng));
    return ts;
}

template <class F>
Spectrum requireIndependent(const BracketOptions& opt, const std::string& what, F spectrumAt) {
    auto ts = sampleTs(opt);
    auto ref = spectrumAt(ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        auto s = spectrumAt(ts[i]);
        for (std::size_t k = 0; k < ref.size(); ++k)
            if (std::abs(s[k] - ref[k]) > opt.independenceTol)
                fail(ErrorCode::NotTIndependent, what + " depends on the Floquet parameter");
    }
    return ref;
}

}  // namespace

BracketReport bracketByVirtualisation(const PeriodicGraph& p, const std::vector<EdgeId>& e0,
                                      const std::vector<VertexId>& v0, const BracketOptions& opt) {
    const auto n = p.quotient.vertexCount();
    auto lower = requireIndependent(opt, "W- (edges virtualised)",
                                    [&](double t) { return spectrum(virtualiseEdges(floquetGraph(p, t), e0)); });
    Spectrum upper;
    if (v0.empty()) {
        // Nothing to virtualise: the upper graph is the quotient itself, which must then be t-independent.
        upper = requireIndependent(opt, "W+ (no vertices virtualised)", [&](double t) { return spectrum(floquetGraph(p, t)); });
    } else {
        upper = requireIndependent(opt, "W+ (vertices virtualised)", [&](double t) {
            return eigenvalues(virtualiseVertices(floquetGraph(p, t), v0, opt.vertexMode));
        });
    }
    BracketReport r;
    r.rangeLo = 0.0;
    r.rangeHi = 2.0 * p.quotient.maxRelativeWeight();
    for (std::size_t k = 0; k < n; ++k) {
        double hi = k < upper.size() ? upper[k] : r.rangeHi;
        r.intervals.push_back({lower[k], hi, false});
    }
    r.methods = {"virtualise-edges", "virtualise-vertices"};
    finaliseReport(r, opt.slack);
    checkContainment(r, bandSweep(p, opt.sweepResolution), opt.containmentTol);
    return r;
}

BracketReport bracketByContraction(const PeriodicGraph& p, const PeriodicGraph& split, VertexId v1, VertexId v2,
                                   const BracketOptions& opt) {
    if (v1 == v2) fail(ErrorCode::SameVertex, "the split vertices must be distinct");
    if (v1.index >= split.quotient.vertexCount() || v2.index >= split.quotient.vertexCount())
        fail(ErrorCode::UnknownVertex, "vertex index out of range");
    if (p.quotient.weightKind() != WeightKind::Standard || split.quotient.weightKind() != WeightKind::Standard)
        fail(ErrorCode::InvalidArgument, "contraction bracketing needs standard weights");
    if (split.quotient.vertexCount() != p.quotient.vertexCount() + 1 ||
        split.quotient.edgeCount() != p.quotient.edgeCount())
        fail(ErrorCode::InvalidArgument, "split graph must have one more vertex and the same edges");

    VertexPartition part{{{v1, v2}}};
    for (double t : sampleTs(opt)) {
        auto merged = spectrum(contractVertices(floquetGraph(split, t), part, WeightKind::Standard));
        auto direct = spectrum(floquetGraph(p, t));
        for (std::size_t k = 0; k < direct.size(); ++k)
            if (std::abs(merged[k] - direct[k]) > opt.independenceTol)
                fail(ErrorCode::InvalidArgument, "contracting the split vertices does not reproduce the quotient");
    }
    auto tree = requireIndependent(opt, "split graph", [&](double t) { return spectrum(floquetGraph(split, t)); });

    BracketReport r;
    r.rangeLo = 0.0;
    r.rangeHi = 2.0 * p.quotient.maxRelativeWeight();
    for (std::size_t k = 0; k < p.quotient.vertexCount(); ++k) r.intervals.push_back({tree[k], tree[k + 1], false});
    r.methods = {"vertex-contraction"};
    finaliseReport(r, opt.slack);
    checkContainment(r, bandSweep(p, opt.sweepResolution), opt.containmentTol);
    return r;
}

BracketReport intersectBrackets(const std::vector<BracketReport>& reports, double slack) {
    if (reports.empty()) fail(ErrorCode::InvalidArgument, "nothing to intersect");
    BracketReport r = reports.front();
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const auto& o = reports[i];
        if (o.intervals.size() != r.intervals.size())
            fail(ErrorCode::IndexCountMismatch, "bracket reports have different interval counts");
        for (std::size_t k = 0; k < r.intervals.size(); ++k) r.intervals[k] = intersect(r.intervals[k], o.intervals[k]);
        for (const auto& m : o.methods)
            if (std::find(r.methods.begin(), r.methods.end(), m) == r.methods.end()) r.methods.push_back(m);
        r.rangeLo = std::max(r.rangeLo, o.rangeLo);
        r.rangeHi = std::min(r.rangeHi, o.rangeHi);
    }
    finaliseReport(r, slack);
    return r;
}

}  // namespace mwg
