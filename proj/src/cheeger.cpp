#include "mwg/cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "mwg/angle.hpp"
#include "mwg/error.hpp"
#include "mwg/spectra.hpp"

namespace mwg {

std::string_view frustrationMethodName(FrustrationMethod m) {
    switch (m) {
        case FrustrationMethod::ExactSigned: return "exact-signed";
        case FrustrationMethod::SpanningForest: return "spanning-forest";
        case FrustrationMethod::GridDescent: return "grid-descent";
    }
    return "unknown";
}

double frustration(const MWGraph& g, const std::vector<double>& tau) {
    if (tau.size() != g.vertexCount()) fail(ErrorCode::PartialMap, "tau must assign an angle to every vertex");
    double sum = 0.0;
    for (const auto& e : g.edges())
        sum += e.weight * std::abs(std::polar(1.0, tau[e.head.index]) -
                                   std::polar(1.0, -e.alpha) * std::polar(1.0, tau[e.tail.index]));
    return sum;
}

namespace {

using cd = std::complex<double>;

bool isSignedPotential(const MWGraph& g) {
    for (const auto& e : g.edges())
        if (!isZeroAngle(e.alpha) && !isPiAngle(e.alpha)) return false;
    return true;
}

// Component roots are pinned: a constant phase shift per component changes nothing.
std::vector<bool> componentRoots(const MWGraph& g) {
    int count = 0;
    auto label = connectedComponents(g, &count);
    std::vector<bool> root(g.vertexCount(), false), seen(count, false);
    for (std::size_t v = 0; v < label.size(); ++v)
        if (!seen[label[v]]) seen[label[v]] = root[v] = true;
    return root;
}

FrustrationResult exactSigned(const MWGraph& g) {
    const auto n = g.vertexCount();
    auto root = componentRoots(g);
    std::vector<std::uint32_t> free;
    for (std::uint32_t v = 0; v < n; ++v)
        if (!root[v]) free.push_back(v);

    std::vector<int> sign(n, 1);
    std::vector<int> edgeSign(g.edgeCount());
    for (std::size_t i = 0; i < g.edgeCount(); ++i) edgeSign[i] = isZeroAngle(g.edges()[i].alpha) ? 1 : -1;
    auto frustrated = [&](std::size_t i) {
        const auto& e = g.edges()[i];
        return sign[e.head.index] != edgeSign[i] * sign[e.tail.index];
    };
    double cur = 0.0;
    for (std::size_t i = 0; i < g.edgeCount(); ++i)
        if (frustrated(i)) cur += 2.0 * g.edges()[i].weight;

    double best = cur;
    std::uint64_t bestCode = 0, code = 0;
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t step = 1; step < total; ++step) {
        int bit = __builtin_ctzll(step);
        code ^= std::uint64_t{1} << bit;
        auto v = free[bit];
        for (auto oe : g.outgoing(VertexId{v})) {
            if (g.isLoop(oe.edge)) continue;
            double w = 2.0 * g.edge(oe.edge).weight;
            cur += frustrated(oe.edge.index) ? -w : w;
        }
        sign[v] = -sign[v];
        if (cur < best - 1e-12) {
            best = cur;
            bestCode = code;
        }
    }
    FrustrationResult r;
    r.minimizer.assign(n, 0.0);
    for (std::size_t b = 0; b < free.size(); ++b)
        if (bestCode >> b & 1u) r.minimizer[free[b]] = kPi;
    r.value = frustration(g, r.minimizer);
    r.method = FrustrationMethod::ExactSigned;
    r.certifiedExact = true;
    return r;
}

// Matrix-tree count of maximal spanning forests (product over components).
double spanningForestCount(const MWGraph& g) {
    int count = 0;
    auto label = connectedComponents(g, &count);
    double total = 1.0;
    for (int c = 0; c < count; ++c) {
        std::vector<std::uint32_t> members;
        std::vector<int> local(g.vertexCount(), -1);
        for (std::uint32_t v = 0; v < g.vertexCount(); ++v)
            if (label[v] == c) {
                local[v] = static_cast<int>(members.size());
                members.push_back(v);
            }
        const auto m = static_cast<Eigen::Index>(members.size());
        if (m <= 1) continue;
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
        for (const auto& e : g.edges()) {
            if (e.tail == e.head || label[e.tail.index] != c) continue;
            int a = local[e.tail.index], b = local[e.head.index];
            lap(a, a) += 1;
            lap(b, b) += 1;
            lap(a, b) -= 1;
            lap(b, a) -= 1;
        }
        total *= lap.bottomRightCorner(m - 1, m - 1).determinant();
    }
    return total;
}

// Phases that make every forest edge frustration-free: τ(∂₊) − τ(∂₋) = −α.
std::vector<double> forestPhases(const MWGraph& g, const std::vector<std::uint32_t>& forest,
                                 const std::vector<bool>& root) {
    const auto n = g.vertexCount();
    std::vector<std::vector<OrientedEdge>> adj(n);
    for (auto i : forest) {
        adj[g.edges()[i].tail.index].push_back({EdgeId{i}, false});
        adj[g.edges()[i].head.index].push_back({EdgeId{i}, true});
    }
    std::vector<double> tau(n, 0.0);
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t r = 0; r < n; ++r) {
        if (!root[r]) continue;
        seen[r] = true;
        stack.push_back(r);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto oe : adj[v]) {
                auto u = g.head(oe).index;
                if (seen[u]) continue;
                seen[u] = true;
                tau[u] = tau[v] - g.alpha(oe);
                stack.push_back(u);
            }
        }
    }
    return tau;
}

FrustrationResult exactForest(const MWGraph& g) {
    const auto n = g.vertexCount();
    auto root = componentRoots(g);
    std::vector<std::uint32_t> edges;
    for (std::uint32_t i = 0; i < g.edgeCount(); ++i)
        if (!g.isLoop(EdgeId{i})) edges.push_back(i);
    int comps = 0;
    connectedComponents(g, &comps);
    const std::size_t need = n - static_cast<std::size_t>(comps);

    FrustrationResult best;
    best.value = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> chosen;

    auto find = [](std::vector<std::uint32_t>& p, std::uint32_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    // Can the edges from idx on still complete a maximal forest?
    auto completable = [&](std::vector<std::uint32_t> p, std::size_t idx, std::size_t have) {
        for (std::size_t j = idx; j < edges.size() && have < need; ++j) {
            const auto& e = g.edges()[edges[j]];
            auto a = find(p, e.tail.index), b = find(p, e.head.index);
            if (a != b) {
                p[a] = b;
                ++have;
            }
        }
        return have == need;
    };
    std::function<void(std::size_t, std::vector<std::uint32_t>&)> rec = [&](std::size_t idx, std::vector<std::uint32_t>& p) {
        if (chosen.size() == need) {
            auto tau = forestPhases(g, chosen, root);
            double v = frustration(g, tau);
            if (v < best.value - 1e-12) {
                best.value = v;
                best.minimizer = std::move(tau);
            }
            return;
        }
        if (idx == edges.size() || edges.size() - idx < need - chosen.size()) return;
        const auto& e = g.edges()[edges[idx]];
        auto a = find(p, e.tail.index), b = find(p, e.head.index);
        if (a != b) {
            auto q = p;
            q[a] = b;
            chosen.push_back(edges[idx]);
            rec(idx + 1, q);
            chosen.pop_back();
        }
        if (completable(p, idx + 1, chosen.size())) rec(idx + 1, p);
    };
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    rec(0, parent);
    best.value = frustration(g, best.minimizer);
    best.method = FrustrationMethod::SpanningForest;
    best.certifiedExact = true;
    return best;
}

FrustrationResult gridDescent(const MWGraph& g, const FrustrationOptions& opt) {
    const auto n = g.vertexCount();
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(-kPi, kPi);

    auto descend = [&](std::vector<double> tau) {
        double value = frustration(g, tau);
        for (int sweep = 0; sweep < 10000; ++sweep) {
            for (std::uint32_t v = 0; v < n; ++v) {
                std::vector<cd> c;
                std::vector<double> w;
                for (auto oe : g.outgoing(VertexId{v})) {
                    if (g.isLoop(oe.edge)) continue;
                    c.push_back(std::polar(1.0, g.alpha(oe) + tau[g.head(oe).index]));
                    w.push_back(g.edge(oe.edge).weight);
                }
                if (c.empty()) continue;
                auto f = [&](double th) {
                    cd z = std::polar(1.0, th);
                    double s = 0.0;
                    for (std::size_t j = 0; j < c.size(); ++j) s += w[j] * std::abs(z - c[j]);
                    return s;
                };
                // Piecewise concave in θ, so kinks are the candidates; the grid guards the rest.
                double bestTh = tau[v], bestF = f(tau[v]);
                for (const auto& cj : c) {
                    double th = std::arg(cj);
                    if (double fv = f(th); fv < bestF) bestF = fv, bestTh = th;
                }
                for (int i = 0; i < opt.gridPoints; ++i) {
                    double th = -kPi + kTwoPi * i / opt.gridPoints;
                    if (double fv = f(th); fv < bestF) bestF = fv, bestTh = th;
                }
                tau[v] = bestTh;
            }
            double next = frustration(g, tau);
            bool done = value - next < opt.convergenceTol;
            value = std::min(value, next);
            if (done) break;
        }
        return std::make_pair(value, tau);
    };

    FrustrationResult best;
    best.value = std::numeric_limits<double>::infinity();
    auto consider = [&](std::vector<double> start) {
        auto [v, tau] = descend(std::move(start));
        if (v < best.value) {
            best.value = v;
            best.minimizer = std::move(tau);
        }
    };
    auto gauge = spanningForestGauge(g);
    for (auto& x : gauge) x = -x;
    consider(gauge);
    for (int r = 0; r < opt.restarts; ++r) {
        std::vector<double> start(n);
        for (auto& x : start) x = uni(rng);
        consider(start);
    }
    best.value = frustration(g, best.minimizer);
    best.method = FrustrationMethod::GridDescent;
    best.certifiedExact = best.value <= 1e-12;
    return best;
}

}  // namespace

FrustrationResult frustrationIndex(const MWGraph& g, const FrustrationOptions& opt) {
    const auto n = g.vertexCount();
    const bool signedPot = isSignedPotential(g);
    if (opt.range == PotentialRange::Signed && !signedPot)
        fail(ErrorCode::InvalidArgument, "signed frustration needs every potential in {0, pi}");

    bool useSigned = opt.range == PotentialRange::Signed || (opt.range == PotentialRange::Auto && signedPot);
    if (useSigned && n > opt.signedVertexCap) {
        if (opt.range == PotentialRange::Signed)
            fail(ErrorCode::SizeLimitExceeded, "exact signed frustration is limited to " +
                                                   std::to_string(opt.signedVertexCap) + " vertices");
        useSigned = false;
    }

    if (isTrivialPotential(g, 1e-12)) {
        FrustrationResult r;
        r.minimizer = spanningForestGauge(g);
        for (auto& x : r.minimizer) x = useSigned ? (isPiAngle(x) ? kPi : 0.0) : -x;
        r.value = frustration(g, r.minimizer);
        r.method = useSigned ? FrustrationMethod::ExactSigned : FrustrationMethod::SpanningForest;
        r.certifiedExact = true;
        return r;
    }
    if (useSigned) return exactSigned(g);
    if (spanningForestCount(g) <= opt.forestEnumerationCap) return exactForest(g);
    return gridDescent(g, opt);
}

namespace {

std::uint64_t toMask(const MWGraph& g, const std::vector<VertexId>& subset) {
    if (g.vertexCount() > 63) fail(ErrorCode::SizeLimitExceeded, "vertex subsets are limited to 63 vertices");
    std::uint64_t mask = 0;
    for (auto v : subset) {
        if (v.index >= g.vertexCount()) fail(ErrorCode::UnknownVertex, "vertex index out of range");
        mask |= std::uint64_t{1} << v.index;
    }
    return mask;
}

std::vector<VertexId> fromMask(std::uint64_t mask) {
    std::vector<VertexId> out;
    for (std::uint32_t v = 0; mask; ++v, mask >>= 1)
        if (mask & 1u) out.push_back(VertexId{v});
    return out;
}

SetCheeger setValue(const MWGraph& g, std::uint64_t mask, const FrustrationOptions& opt) {
    if (mask == 0) fail(ErrorCode::EmptyVertexSet, "Cheeger quotient of the empty set");
    auto members = fromMask(mask);
    SetCheeger s;
    auto sub = inducedSubgraph(g, members);
    auto fr = frustrationIndex(sub, opt);
    s.frustration = fr.value;
    s.certified = fr.certifiedExact;
    s.method = fr.method;
    s.boundary = boundaryWeight(g, mask);
    for (auto v : members) s.weight += g.vertex(v).weight;
    s.value = (s.frustration + s.boundary) / s.weight;
    return s;
}

// Subpartitions compare by their blocks, each a sorted vertex list, blocks ordered by least element.
bool lexLess(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    auto la = std::vector<std::vector<VertexId>>(), lb = la;
    for (auto m : a) la.push_back(fromMask(m));
    for (auto m : b) lb.push_back(fromMask(m));
    return la < lb;
}

}  // namespace

double boundaryWeight(const MWGraph& g, std::uint64_t mask) {
    double b = 0.0;
    for (const auto& e : g.edges()) {
        bool t = mask >> e.tail.index & 1u, h = mask >> e.head.index & 1u;
        if (t != h) b += e.weight;
    }
    return b;
}

SetCheeger cheegerOfSet(const MWGraph& g, const std::vector<VertexId>& subset, const FrustrationOptions& opt) {
    if (subset.empty()) fail(ErrorCode::EmptyVertexSet, "Cheeger quotient of the empty set");
    return setValue(g, toMask(g, subset), opt);
}

CheegerResult cheegerConstant(const MWGraph& g, int k, const CheegerOptions& opt) {
    const auto n = g.vertexCount();
    if (k < 1 || static_cast<std::size_t>(k) > n) fail(ErrorCode::IndexOutOfRange, "k must lie in 1..|V|");
    const auto cap = k <= 3 ? opt.capSmallK : opt.capLargeK;
    if (n > cap)
        fail(ErrorCode::SizeLimitExceeded, "Cheeger enumeration for k=" + std::to_string(k) + " is limited to " +
                                               std::to_string(cap) + " vertices");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<SetCheeger> h(full + 1);
    for (std::uint64_t m = 1; m <= full; ++m) h[m] = setValue(g, m, opt.frustration);

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> bestBlocks, blocks;
    const double eps = opt.tieTolerance;

    std::function<void(std::uint64_t, int, double)> rec = [&](std::uint64_t used, int prevLeast, double curMax) {
        if (static_cast<int>(blocks.size()) == k) {
            if (curMax < best - eps || (curMax <= best + eps && lexLess(blocks, bestBlocks))) {
                best = std::min(best, curMax);
                bestBlocks = blocks;
            }
            return;
        }
        const int remaining = k - static_cast<int>(blocks.size());
        for (int l = prevLeast + 1; l < static_cast<int>(n); ++l) {
            if (used >> l & 1u) continue;
            const std::uint64_t above = full & ~((std::uint64_t{2} << l) - 1) & ~used;
            if (__builtin_popcountll(above) + 1 < remaining) break;
            // enumerate T ⊆ above, block = {l} ∪ T
            std::uint64_t t = above;
            while (true) {
                std::uint64_t block = t | (std::uint64_t{1} << l);
                double val = std::max(curMax, h[block].value);
                if (val <= best + eps) {
                    blocks.push_back(block);
                    rec(used | block, l, val);
                    blocks.pop_back();
                }
                if (t == 0) break;
                t = (t - 1) & above;
            }
        }
    };
    rec(0, -1, 0.0);

    CheegerResult res;
    res.k = k;
    res.value = best;
    for (auto b : bestBlocks) {
        res.subpartition.blocks.push_back(fromMask(b));
        res.blockValues.push_back(h[b].value);
    }
    // Exactness depends on every subset, not only on the optimizer's blocks.
    res.certified = true;
    res.method = FrustrationMethod::ExactSigned;
    for (std::uint64_t m = 1; m <= full; ++m) {
        if (!h[m].certified) res.certified = false;
        if (h[m].method == FrustrationMethod::GridDescent) res.method = FrustrationMethod::GridDescent;
        else if (h[m].method == FrustrationMethod::SpanningForest && res.method == FrustrationMethod::ExactSigned)
            res.method = FrustrationMethod::SpanningForest;
    }
    return res;
}

double classicalCheeger(const MWGraph& g) {
    const auto n = g.vertexCount();
    if (n < 2) fail(ErrorCode::IndexOutOfRange, "needs at least two vertices");
    if (n > 20) fail(ErrorCode::SizeLimitExceeded, "classical Cheeger enumeration is limited to 20 vertices");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    double total = 0.0;
    for (const auto& v : g.vertices()) total += v.weight;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t m = 1; m < full; ++m) {
        double w = 0.0;
        for (std::uint32_t v = 0; v < n; ++v)
            if (m >> v & 1u) w += g.vertices()[v].weight;
        best = std::min(best, boundaryWeight(g, m) / std::min(w, total - w));
    }
    return best;
}

bool checkCheegerMonotonicity(const MWHom& hom, const MWGraph& source, const MWGraph& target, int kMax,
                              const CheegerOptions& opt, double tol) {
    if (!hom.flags.isMWHom()) fail(ErrorCode::NotAHomomorphism, "map is not an MW-homomorphism");
    const int limit = std::min<int>(kMax, static_cast<int>(std::min(source.vertexCount(), target.vertexCount())));
    for (int k = 1; k <= limit; ++k)
        if (cheegerConstant(source, k, opt).value > cheegerConstant(target, k, opt).value + tol) return false;
    return true;
}

CheegerInequality checkCheegerInequalities(const MWGraph& g, int k, const CheegerOptions& opt, double tol) {
    if (k != 1 && k != 2) fail(ErrorCode::InvalidArgument, "Cheeger inequalities are certified for k = 1, 2 only");
    if (k == 2 && !isTrivialPotential(g))
        fail(ErrorCode::HypothesisNotSatisfied, "the k=2 constant needs a trivial potential");
    CheegerInequality r;
    r.k = k;
    r.lambda = std::max(0.0, spectrum(g)[static_cast<std::size_t>(k - 1)]);
    r.h = cheegerConstant(g, k, opt).value;
    r.constant = k == 1 ? 1.0 : std::sqrt(2.0) / 4.0;
    r.lower = r.lambda / 2.0;
    r.upper = r.constant * k * k * k * std::sqrt(g.maxRelativeWeight() * r.lambda);
    r.holds = r.lower <= r.h + tol && r.h <= r.upper + tol;
    return r;
}

}  // namespace mwg
