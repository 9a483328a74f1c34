#include "mwg/preorder.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mwg/angle.hpp"
#include "mwg/error.hpp"

namespace mwg {

std::string_view weightClassName(WeightClass c) {
    switch (c) {
        case WeightClass::Combinatorial: return "combinatorial";
        case WeightClass::Standard: return "standard";
        case WeightClass::General: return "general";
    }
    return "general";
}

WeightClass parseWeightClass(std::string_view name) {
    if (name == "combinatorial") return WeightClass::Combinatorial;
    if (name == "standard") return WeightClass::Standard;
    if (name == "general") return WeightClass::General;
    fail(ErrorCode::InvalidArgument, "unknown weight class '" + std::string(name) + "'");
}

std::string_view operationName(PerturbationOp op) {
    switch (op) {
        case PerturbationOp::DeleteEdge: return "delete-edge";
        case PerturbationOp::ContractVertices: return "contract-vertices";
        case PerturbationOp::ContractEdge: return "contract-edge";
        case PerturbationOp::ContractPendant: return "contract-pendant";
        case PerturbationOp::DeleteVertex: return "delete-vertex";
        case PerturbationOp::Minor: return "minor";
    }
    return "unknown";
}

namespace {

const std::string kW = "W";
const std::string kWp = "W'";

std::optional<int> shiftBetween(const std::vector<CertifiedRelation>& rels, const std::string& lhs) {
    std::optional<int> best;
    for (const auto& r : rels)
        if (r.lhs == lhs && r.lhs != r.rhs) best = best ? std::min(*best, r.shift) : r.shift;
    return best;
}

WeightKind kindFor(WeightClass wc) {
    switch (wc) {
        case WeightClass::Combinatorial: return WeightKind::Combinatorial;
        case WeightClass::Standard: return WeightKind::Standard;
        case WeightClass::General: return WeightKind::Custom;
    }
    return WeightKind::Custom;
}

// The input is read with the weights of the requested class.
MWGraph asClass(const MWGraph& w, WeightClass wc) {
    if (wc == WeightClass::General) return w;
    return w.weightKind() == kindFor(wc) ? w : withWeightKind(w, kindFor(wc));
}

CertifiedRelation spectral(const std::string& lhs, const std::string& rhs, int shift, std::string tag, double tol) {
    CertifiedRelation r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.kind = RelationKind::SpectralShift;
    r.shift = shift;
    r.resultTag = std::move(tag);
    r.tolerance = tol;
    return r;
}

CertifiedRelation geometric(const std::string& lhs, const std::string& rhs, std::string tag, double tol) {
    auto r = spectral(lhs, rhs, 0, std::move(tag), tol);
    r.kind = RelationKind::Geometric;
    return r;
}

void requireHom(const MWHom& h, const std::string& what) {
    if (!h.flags.isMWHom())
        fail(ErrorCode::CertificateViolation, what + ": constructed map is not an MW-homomorphism");
}

// Verifies every relation against the spectra of W and W'.
void verifyAll(PerturbationCertificate& cert, const MWGraph& w, const MWGraph& wp) {
    auto sw = spectrum(w);
    auto swp = spectrum(wp);
    for (auto& rel : cert.relations) {
        const auto& l = rel.lhs == kW ? sw : swp;
        const auto& r = rel.rhs == kW ? sw : swp;
        rel = verifyRelation(rel, l, r);
    }
}

// Keeps the strongest guaranteed shift per direction.
void addBest(std::vector<CertifiedRelation>& rels, CertifiedRelation rel) {
    for (auto& r : rels) {
        if (r.lhs == rel.lhs && r.rhs == rel.rhs && r.kind == rel.kind) {
            if (rel.shift < r.shift) r = std::move(rel);
            return;
        }
    }
    rels.push_back(std::move(rel));
}

bool leq(double a, double b) { return a <= b * (1.0 + 1e-12) + 1e-15; }

}  // namespace

std::optional<int> PerturbationCertificate::forwardShift() const { return shiftBetween(relations, kW); }
std::optional<int> PerturbationCertificate::backwardShift() const { return shiftBetween(relations, kWp); }

CertifiedRelation verifyRelation(CertifiedRelation rel, const Spectrum& lhs, const Spectrum& rhs) {
    auto check = shiftLess(lhs, rhs, rel.shift, rel.tolerance);
    rel.minimalShift = minimalShift(lhs, rhs, rel.tolerance);
    if (!check.holds) {
        std::string at = check.witnessIndex && *check.witnessIndex > 0
                             ? " (violated at k=" + std::to_string(*check.witnessIndex) + ")"
                             : " (length condition fails)";
        fail(ErrorCode::CertificateViolation,
             rel.lhs + " <=_" + std::to_string(rel.shift) + " " + rel.rhs + " does not hold" + at + " [" +
                 rel.resultTag + "]");
    }
    rel.numericallyVerified = true;
    return rel;
}

PerturbationResult certifyDeleteEdge(const MWGraph& input, EdgeId e0, WeightClass wc, const CertifyOptions& opt) {
    if (e0.index >= input.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    const auto w = asClass(input, wc);
    const auto& edge = w.edge(e0);
    const bool loop = w.isLoop(e0);
    const bool zero = isZeroAngle(edge.alpha);
    const bool pi = isPiAngle(edge.alpha);
    const double tol = opt.tol;

    PerturbationCertificate cert;
    cert.operation = PerturbationOp::DeleteEdge;
    cert.parameters = {edge.name};
    cert.weightClass = wc;

    MWGraph wp;
    if (wc != WeightClass::General) {
        wp = deleteEdge(w, e0, kindFor(wc));
    } else {
        wp = deleteEdge(w, e0, WeightKind::Custom);
        if (opt.vertexWeights) wp = withVertexWeights(wp, *opt.vertexWeights);
    }

    if (wc == WeightClass::Combinatorial) {
        if (loop && zero) {
            cert.branch = "loop without potential";
            cert.relations.push_back(spectral(kWp, kW, 0, "loop deletion, combinatorial, alpha=0 (isospectral)", tol));
            cert.relations.push_back(spectral(kW, kWp, 0, "loop deletion, combinatorial, alpha=0 (isospectral)", tol));
        } else {
            cert.branch = "general edge";
            cert.relations.push_back(spectral(kW, kWp, 1, "edge deletion, combinatorial", tol));
            requireHom(inclusionHom(wp, w), "edge deletion");
            cert.relations.push_back(geometric(kWp, kW, "edge deletion, combinatorial (inclusion homomorphism)", tol));
        }
    } else if (wc == WeightClass::Standard) {
        cert.relations.push_back(spectral(kW, kWp, 1, "edge deletion, standard", tol));
        cert.relations.push_back(spectral(kWp, kW, 1, "edge deletion, standard", tol));
        if (loop && zero) {
            cert.branch = "loop without potential";
            addBest(cert.relations, spectral(kW, kWp, 0, "loop deletion, standard, alpha=0", tol));
        } else if (loop && pi) {
            cert.branch = "loop with potential pi";
            addBest(cert.relations, spectral(kWp, kW, 0, "loop deletion, standard, alpha=pi", tol));
        } else {
            cert.branch = "general edge";
        }
    } else {
        if (!opt.branch) fail(ErrorCode::HypothesisNotSatisfied, "general weights need an explicit hypothesis branch");
        const auto n = w.vertexCount();
        auto wv = [&](const MWGraph& g, std::size_t v) { return g.vertices()[v].weight; };
        auto endpoint = [&](std::size_t v) { return v == edge.tail.index || v == edge.head.index; };
        switch (*opt.branch) {
            case GeneralBranch::A1:
                cert.branch = "A1";
                for (std::size_t v = 0; v < n; ++v)
                    if (!leq(wv(w, v), wv(wp, v)))
                        fail(ErrorCode::HypothesisNotSatisfied, "branch A1 needs w(v) <= w'(v) for all v");
                requireHom(inclusionHom(wp, w), "edge deletion");
                cert.relations.push_back(geometric(kWp, kW, "edge deletion, general weights, branch A1", tol));
                break;
            case GeneralBranch::A2:
                cert.branch = "A2";
                for (std::size_t v = 0; v < n; ++v) {
                    double lhs = endpoint(v) ? wv(w, v) - edge.weight : wv(w, v);
                    if (!leq(lhs, wv(wp, v)))
                        fail(ErrorCode::HypothesisNotSatisfied, "branch A2 vertex weight inequality fails");
                }
                if (w.maxRelativeWeight() > 1.0 + 1e-12)
                    fail(ErrorCode::HypothesisNotSatisfied, "branch A2 needs maximal relative weight <= 1");
                cert.relations.push_back(spectral(kWp, kW, 1, "edge deletion, general weights, branch A2", tol));
                if (loop && pi)
                    addBest(cert.relations, spectral(kWp, kW, 0, "edge deletion, general weights, branch A2, loop alpha=pi", tol));
                break;
            case GeneralBranch::B:
                cert.branch = "B";
                for (std::size_t v = 0; v < n; ++v)
                    if (!leq(wv(wp, v), wv(w, v)))
                        fail(ErrorCode::HypothesisNotSatisfied, "branch B needs w'(v) <= w(v) for all v");
                cert.relations.push_back(spectral(kW, kWp, 1, "edge deletion, general weights, branch B", tol));
                if (loop && zero)
                    addBest(cert.relations, spectral(kW, kWp, 0, "edge deletion, general weights, branch B, loop alpha=0", tol));
                break;
            case GeneralBranch::C:
                cert.branch = "C";
                for (std::size_t v = 0; v < n; ++v)
                    if (wv(wp, v) != wv(w, v))
                        fail(ErrorCode::HypothesisNotSatisfied, "branch C needs unchanged vertex weights");
                if (!(loop && zero)) fail(ErrorCode::HypothesisNotSatisfied, "branch C needs a loop with alpha=0");
                cert.relations.push_back(spectral(kWp, kW, 0, "edge deletion, general weights, branch C (isospectral)", tol));
                cert.relations.push_back(spectral(kW, kWp, 0, "edge deletion, general weights, branch C (isospectral)", tol));
                break;
        }
    }
    verifyAll(cert, w, wp);
    return {std::move(wp), std::move(cert)};
}

PerturbationResult certifyContractVertices(const MWGraph& input, VertexId v1, VertexId v2, WeightClass wc,
                                           const CertifyOptions& opt) {
    if (v1.index >= input.vertexCount() || v2.index >= input.vertexCount())
        fail(ErrorCode::UnknownVertex, "vertex index out of range");
    if (v1 == v2) fail(ErrorCode::SameVertex, "cannot contract a vertex with itself");
    const auto w = asClass(input, wc);
    const double tol = opt.tol;

    int r = std::min(w.degree(v1), w.degree(v2));
    int s = 0;
    for (auto e : w.edgesBetween(v1, v2))
        if (isZeroAngle(w.edge(e).alpha)) ++s;

    PerturbationCertificate cert;
    cert.operation = PerturbationOp::ContractVertices;
    cert.parameters = {w.vertex(v1).name, w.vertex(v2).name};
    cert.weightClass = wc;
    cert.r = r;
    cert.s = s;

    VertexPartition part{{{v1, v2}}};
    MWGraph wp = contractVertices(w, part, wc == WeightClass::General ? WeightKind::Custom : kindFor(wc));
    if (wc == WeightClass::General && opt.vertexWeights) wp = withVertexWeights(wp, *opt.vertexWeights);
    auto hom = quotientHom(w, wp, part);

    switch (wc) {
        case WeightClass::Combinatorial:
            cert.branch = "combinatorial";
            requireHom(hom, "vertex contraction");
            cert.relations.push_back(geometric(kW, kWp, "vertex contraction, combinatorial (quotient homomorphism)", tol));
            cert.relations.push_back(spectral(kWp, kW, r + 1 - s, "vertex contraction, combinatorial, shift r+1-s", tol));
            break;
        case WeightClass::Standard:
            cert.branch = "standard";
            requireHom(hom, "vertex contraction");
            cert.relations.push_back(geometric(kW, kWp, "vertex contraction, standard (measure-preserving quotient)", tol));
            cert.relations.push_back(spectral(kWp, kW, 1, "vertex contraction, standard", tol));
            break;
        case WeightClass::General: {
            // Edge weights are carried over unchanged, so only vertex weights decide the branch.
            bool equal = true, ineq = true;
            const auto merged = hom.vertexMap[v1.index].index;
            for (std::uint32_t v = 0; v < w.vertexCount(); ++v) {
                auto img = hom.vertexMap[v].index;
                double target = wp.vertices()[img].weight;
                double source = img == merged ? w.vertex(v1).weight + w.vertex(v2).weight : w.vertices()[v].weight;
                if (std::abs(target - source) > 1e-12 * std::max(1.0, source)) equal = false;
                if (!leq(target, source)) ineq = false;
            }
            if (!ineq) fail(ErrorCode::HypothesisNotSatisfied, "contracted vertex weights exceed the originals");
            requireHom(hom, "vertex contraction");
            cert.relations.push_back(geometric(kW, kWp, "vertex contraction, general weights", tol));
            if (equal) {
                cert.branch = "general, measure preserving";
                cert.relations.push_back(spectral(kWp, kW, 1, "vertex contraction, general weights, measure preserving", tol));
            } else {
                cert.branch = "general, weight inequalities";
                cert.relations.push_back(spectral(kWp, kW, r + 1 - s, "vertex contraction, general weights, shift r+1-s", tol));
            }
            break;
        }
    }
    verifyAll(cert, w, wp);
    return {std::move(wp), std::move(cert)};
}

PerturbationResult certifyContractEdge(const MWGraph& input, EdgeId e0, WeightClass wc, const CertifyOptions& opt) {
    if (e0.index >= input.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    if (input.isLoop(e0)) fail(ErrorCode::LoopContraction, "cannot contract a loop");
    const auto& ed = input.edge(e0);
    if (input.edgesBetween(ed.tail, ed.head).size() != 1)
        fail(ErrorCode::MultiEdge, "edge '" + ed.name + "' is one of several edges between its endpoints");
    if (wc == WeightClass::General)
        fail(ErrorCode::HypothesisNotSatisfied, "edge contraction is certified for combinatorial or standard weights only");
    const auto w = asClass(input, wc);
    const double tol = opt.tol;
    const auto& edge = w.edge(e0);
    const int r = std::min(w.degree(edge.tail), w.degree(edge.head));
    const bool zero = isZeroAngle(edge.alpha);
    const bool pi = isPiAngle(edge.alpha);
    const bool bridge = isBridge(w, e0);

    PerturbationCertificate cert;
    cert.operation = PerturbationOp::ContractEdge;
    cert.parameters = {edge.name};
    cert.weightClass = wc;
    cert.r = r;
    auto wp = contractEdge(w, e0, kindFor(wc));

    std::vector<std::string> branches;
    if (wc == WeightClass::Combinatorial) {
        cert.relations.push_back(spectral(kW, kWp, 1, "edge contraction, combinatorial", tol));
        cert.relations.push_back(spectral(kWp, kW, r + 1, "edge contraction, combinatorial, shift r+1", tol));
        if (zero || bridge) {
            branches.push_back(zero ? "alpha=0" : "bridge");
            const std::string tag = std::string("edge contraction, combinatorial, ") + (zero ? "alpha=0" : "bridge");
            addBest(cert.relations, spectral(kW, kWp, 0, tag, tol));
            addBest(cert.relations, spectral(kWp, kW, r, tag + ", shift r", tol));
        }
    } else {
        cert.relations.push_back(spectral(kW, kWp, 1, "edge contraction, standard", tol));
        cert.relations.push_back(spectral(kWp, kW, 2, "edge contraction, standard", tol));
        if (zero) {
            branches.push_back("alpha=0");
            addBest(cert.relations, spectral(kW, kWp, 0, "edge contraction, standard, alpha=0", tol));
        }
        if (pi) {
            branches.push_back("alpha=pi");
            addBest(cert.relations, spectral(kWp, kW, 1, "edge contraction, standard, alpha=pi", tol));
        }
        if (bridge) {
            branches.push_back("bridge");
            addBest(cert.relations, spectral(kW, kWp, 0, "edge contraction, standard, bridge", tol));
            addBest(cert.relations, spectral(kWp, kW, 1, "edge contraction, standard, bridge", tol));
        }
    }
    for (std::size_t i = 0; i < branches.size(); ++i) cert.branch += (i ? "+" : "") + branches[i];
    if (cert.branch.empty()) cert.branch = "general edge";
    verifyAll(cert, w, wp);
    return {std::move(wp), std::move(cert)};
}

PerturbationResult certifyContractPendant(const MWGraph& input, EdgeId e0, WeightClass wc, const CertifyOptions& opt) {
    if (e0.index >= input.edgeCount()) fail(ErrorCode::UnknownEdge, "edge index out of range");
    if (!isPendantEdge(input, e0)) fail(ErrorCode::NotPendant, "edge '" + input.edge(e0).name + "' is not pendant");
    if (wc == WeightClass::General)
        fail(ErrorCode::HypothesisNotSatisfied, "pendant contraction is certified for combinatorial or standard weights only");
    const auto w = asClass(input, wc);
    PerturbationCertificate cert;
    cert.operation = PerturbationOp::ContractPendant;
    cert.parameters = {w.edge(e0).name};
    cert.weightClass = wc;
    cert.branch = std::string(weightClassName(wc));
    auto wp = contractEdge(w, e0, kindFor(wc));
    const std::string tag = "pendant edge contraction, " + std::string(weightClassName(wc));
    cert.relations.push_back(spectral(kW, kWp, 0, tag, opt.tol));
    cert.relations.push_back(spectral(kWp, kW, 1, tag, opt.tol));
    verifyAll(cert, w, wp);
    return {std::move(wp), std::move(cert)};
}

PerturbationResult certifyDeleteVertex(const MWGraph& input, VertexId v0, WeightClass wc, const CertifyOptions& opt) {
    if (v0.index >= input.vertexCount()) fail(ErrorCode::UnknownVertex, "vertex index out of range");
    if (wc == WeightClass::General)
        fail(ErrorCode::HypothesisNotSatisfied, "vertex deletion is certified for combinatorial or standard weights only");
    const auto w = asClass(input, wc);
    auto wp = deleteVertex(w, v0, kindFor(wc));
    const int r = w.degree(v0);

    PerturbationCertificate cert;
    cert.operation = PerturbationOp::DeleteVertex;
    cert.parameters = {w.vertex(v0).name};
    cert.weightClass = wc;
    cert.r = r;
    const std::string tag = "vertex deletion, " + std::string(weightClassName(wc));
    if (r == 0) {
        // An isolated vertex only carries an eigenvalue 0.
        cert.branch = "isolated vertex";
        cert.relations.push_back(spectral(kW, kWp, 0, tag + ", isolated vertex", opt.tol));
        cert.relations.push_back(spectral(kWp, kW, 1, tag + ", isolated vertex", opt.tol));
    } else {
        cert.branch = "degree " + std::to_string(r);
        cert.relations.push_back(spectral(kW, kWp, r - 1, tag + ", shift deg-1", opt.tol));
        int back = wc == WeightClass::Combinatorial ? 1 : r;
        cert.relations.push_back(spectral(kWp, kW, back, tag + (back == 1 ? "" : ", shift deg"), opt.tol));
    }
    verifyAll(cert, w, wp);
    return {std::move(wp), std::move(cert)};
}

CertifiedRelation spanningSubgraphMonotone(const MWGraph& w, const std::vector<EdgeId>& removed, double tol) {
    if (w.weightKind() != WeightKind::Combinatorial)
        fail(ErrorCode::NotCombinatorial, "spanning subgraph monotonicity needs combinatorial weights");
    auto sub = deleteEdges(w, removed, WeightKind::Combinatorial);
    requireHom(inclusionHom(sub, w), "spanning subgraph");
    auto rel = geometric("W-E0", "W", "spanning subgraph, combinatorial", tol);
    return verifyRelation(rel, spectrum(sub), spectrum(w));
}

int cliqueNumber(const MWGraph& g) {
    const auto n = g.vertexCount();
    if (n > 16) fail(ErrorCode::SizeLimitExceeded, "clique search is limited to 16 vertices");
    if (n == 0) return 0;
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& e : g.edges()) {
        if (e.tail == e.head) continue;
        adj[e.tail.index] |= 1u << e.head.index;
        adj[e.head.index] |= 1u << e.tail.index;
    }
    int best = 0;
    // Bron–Kerbosch with pivoting over bitsets.
    auto bk = [&](auto&& self, std::uint32_t R, std::uint32_t P, std::uint32_t X) -> void {
        if (P == 0 && X == 0) {
            best = std::max(best, __builtin_popcount(R));
            return;
        }
        if (__builtin_popcount(R) + __builtin_popcount(P) <= best) return;
        std::uint32_t PX = P | X;
        int pivot = __builtin_ctz(PX);
        std::uint32_t cand = P & ~adj[pivot];
        while (cand) {
            int v = __builtin_ctz(cand);
            cand &= cand - 1;
            self(self, R | (1u << v), P & adj[v], X & adj[v]);
            P &= ~(1u << v);
            X |= 1u << v;
        }
    };
    std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);
    bk(bk, 0u, all, 0u);
    return best;
}

std::optional<CliqueBound> cliqueMultiplicityBound(const MWGraph& g, double tol) {
    if (g.weightKind() != WeightKind::Combinatorial) fail(ErrorCode::NotCombinatorial, "needs combinatorial weights");
    for (const auto& e : g.edges())
        if (!isZeroAngle(e.alpha)) fail(ErrorCode::NonzeroPotential, "needs a vanishing magnetic potential");
    if (!isConnected(g)) fail(ErrorCode::Disconnected, "graph is disconnected");
    const int d = cliqueNumber(g);
    const int m = static_cast<int>(g.edgeCount());
    const int threshold = (d - 1) * (d + 2) / 2;
    if (m >= threshold) return std::nullopt;
    CliqueBound b;
    b.d = d;
    b.multiplicityLowerBound = threshold - m;
    b.observedMultiplicity = spectrum(g).multiplicity(static_cast<double>(d), tol);
    if (b.observedMultiplicity < b.multiplicityLowerBound)
        fail(ErrorCode::CertificateViolation, "eigenvalue " + std::to_string(d) + " has multiplicity " +
                                                  std::to_string(b.observedMultiplicity) + " below the bound " +
                                                  std::to_string(b.multiplicityLowerBound));
    return b;
}

bool excludeClique(const Spectrum& spectrum, int d, int m, double tol) {
    if (d < 2 || m < 0) fail(ErrorCode::InvalidArgument, "need d >= 2 and m >= 0");
    if (m < d * (d - 1) / 2) return true;
    return spectrum.multiplicity(static_cast<double>(d), tol) == 0 && m < (d - 1) * (d + 2) / 2;
}

MinorResult certifyMinor(const MWGraph& input, const std::vector<MinorStep>& script, WeightClass wc, double tol) {
    if (wc == WeightClass::General) fail(ErrorCode::InvalidArgument, "minors are certified for combinatorial or standard weights");
    if (!isSimple(input)) fail(ErrorCode::NotSimple, "minor certificates need a simple graph");
    for (const auto& e : input.edges())
        if (!isZeroAngle(e.alpha)) fail(ErrorCode::NonzeroPotential, "minor certificates need a vanishing potential");

    const auto w = asClass(input, wc);
    MinorResult out{w, {}};
    auto& mc = out.certificate;
    int forward = 0, backward = 0;
    CertifyOptions opt;
    opt.tol = tol;
    for (std::size_t i = 0; i < script.size(); ++i) {
        const auto& step = script[i];
        const auto& cur = out.graph;
        PerturbationResult res;
        try {
            switch (step.kind) {
                case MinorStepKind::DeleteEdge: {
                    auto e = cur.edgeByName(step.target);
                    res = certifyDeleteEdge(cur, e, wc, opt);
                    ++mc.p;
                    break;
                }
                case MinorStepKind::ContractEdge: {
                    auto e = cur.edgeByName(step.target);
                    const auto& ed = cur.edge(e);
                    mc.r += std::min(cur.degree(ed.tail), cur.degree(ed.head));
                    if (isBridge(cur, e)) ++mc.bridges;
                    res = certifyContractEdge(cur, e, wc, opt);
                    ++mc.q;
                    break;
                }
                case MinorStepKind::DeletePendantVertex: {
                    auto v = cur.vertexByName(step.target);
                    if (cur.degree(v) != 1) fail(ErrorCode::NotPendant, "vertex '" + step.target + "' is not pendant");
                    res = certifyDeleteVertex(cur, v, wc, opt);
                    ++mc.s;
                    break;
                }
            }
        } catch (const Error& err) {
            if (err.code() == ErrorCode::CertificateViolation) throw;
            fail(ErrorCode::InvalidStep, "step " + std::to_string(i + 1) + ": " + err.what());
        }
        forward += res.certificate.forwardShift().value_or(0);
        backward += res.certificate.backwardShift().value_or(0);
        mc.steps.push_back(std::move(res.certificate));
        out.graph = std::move(res.graph);
    }

    auto& cert = mc.certificate;
    cert.operation = PerturbationOp::Minor;
    cert.weightClass = wc;
    for (const auto& st : script) cert.parameters.push_back(st.target);
    cert.branch = "composition of " + std::to_string(script.size()) + " steps";
    cert.r = mc.r;
    cert.s = mc.s;
    cert.relations.push_back(spectral(kW, kWp, forward, "minor, composed step shifts", tol));
    cert.relations.push_back(spectral(kWp, kW, backward, "minor, composed step shifts", tol));
    auto sw = spectrum(w);
    auto swp = spectrum(out.graph);
    for (auto& rel : cert.relations) rel = verifyRelation(rel, rel.lhs == kW ? sw : swp, rel.rhs == kW ? sw : swp);

    for (auto [lambda, mult] : sw.grouped()) {
        int guaranteed = mult - forward - backward;
        if (guaranteed <= 0) continue;
        int observed = swp.multiplicity(lambda, 1e-8);
        if (observed < guaranteed)
            fail(ErrorCode::CertificateViolation, "eigenvalue multiplicity did not persist in the minor");
        mc.persistent.push_back({lambda, mult, guaranteed, observed});
    }
    return out;
}

}  // namespace mwg
