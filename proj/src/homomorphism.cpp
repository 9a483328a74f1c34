#include "mwg/homomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mwg/angle.hpp"
#include "mwg/error.hpp"

namespace mwg {

namespace {

bool weightLeq(double a, double b) { return a <= b * (1.0 + 1e-12) + 1e-15; }
bool weightEq(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

MWHom verifyHom(const MWGraph& source, const MWGraph& target, std::vector<VertexId> vertexMap,
                std::vector<OrientedEdge> edgeMap, double tol) {
    if (vertexMap.size() != source.vertexCount() || edgeMap.size() != source.edgeCount())
        fail(ErrorCode::PartialMap, "homomorphism must be defined on every source vertex and edge");
    for (auto v : vertexMap)
        if (v.index >= target.vertexCount()) fail(ErrorCode::PartialMap, "vertex image outside target");
    for (auto e : edgeMap)
        if (e.edge.index >= target.edgeCount()) fail(ErrorCode::PartialMap, "edge image outside target");

    MWHom h{std::move(vertexMap), std::move(edgeMap), {}};
    auto& f = h.flags;

    f.isGraphHom = true;
    f.preservesPotential = true;
    for (std::uint32_t i = 0; i < source.edgeCount(); ++i) {
        OrientedEdge e{EdgeId{i}, false};
        auto img = h.edgeMap[i];
        if (h.vertexMap[source.tail(e).index] != target.tail(img) ||
            h.vertexMap[source.head(e).index] != target.head(img))
            f.isGraphHom = false;
        if (!anglesEqual(source.alpha(e), target.alpha(img), tol)) f.preservesPotential = false;
    }

    std::vector<double> pushV(target.vertexCount(), 0.0);
    for (std::size_t v = 0; v < source.vertexCount(); ++v) pushV[h.vertexMap[v].index] += source.vertices()[v].weight;
    std::vector<double> pushE(target.edgeCount(), 0.0);
    std::vector<int> hits(target.edgeCount(), 0);
    for (std::size_t e = 0; e < source.edgeCount(); ++e) {
        pushE[h.edgeMap[e].edge.index] += source.edges()[e].weight;
        ++hits[h.edgeMap[e].edge.index];
    }

    f.vertexWeightIneq = f.vertexMeasurePreserving = true;
    for (std::size_t v = 0; v < target.vertexCount(); ++v) {
        double w = target.vertices()[v].weight;
        if (pushV[v] < w * (1.0 - 1e-12)) f.vertexWeightIneq = false;
        if (!weightEq(pushV[v], w)) f.vertexMeasurePreserving = false;
    }
    f.edgeWeightIneq = f.edgeMeasurePreserving = true;
    bool injective = true;
    for (std::size_t e = 0; e < target.edgeCount(); ++e) {
        double w = target.edges()[e].weight;
        if (!weightLeq(pushE[e], w)) f.edgeWeightIneq = false;
        if (!weightEq(pushE[e], w)) f.edgeMeasurePreserving = false;
        if (hits[e] > 1) injective = false;
    }

    if (injective && f.isGraphHom) {
        std::vector<int> degSum(target.vertexCount(), 0);
        for (std::uint32_t v = 0; v < source.vertexCount(); ++v)
            degSum[h.vertexMap[v].index] += source.degree(VertexId{v});
        bool ok = true;
        for (std::uint32_t v = 0; v < target.vertexCount(); ++v)
            if (degSum[v] > target.degree(VertexId{v})) ok = false;
        f.degreeSumHolds = ok;
    }
    return h;
}

MWHom identityHom(const MWGraph& source, const MWGraph& target) {
    std::vector<VertexId> vm(source.vertexCount());
    for (std::uint32_t i = 0; i < vm.size(); ++i) vm[i] = VertexId{i};
    std::vector<OrientedEdge> em(source.edgeCount());
    for (std::uint32_t i = 0; i < em.size(); ++i) em[i] = {EdgeId{i}, false};
    return verifyHom(source, target, std::move(vm), std::move(em));
}

MWHom quotientHom(const MWGraph& source, const MWGraph& quotient, const VertexPartition& part) {
    // contractVertices keeps the edge order and places each block at its first member.
    std::vector<int> blockOf(source.vertexCount(), -1);
    for (std::size_t b = 0; b < part.blocks.size(); ++b)
        for (auto v : part.blocks[b]) blockOf[v.index] = static_cast<int>(b);
    std::vector<VertexId> vm(source.vertexCount());
    std::vector<int> blockTarget(part.blocks.size(), -1);
    std::uint32_t next = 0;
    for (std::uint32_t v = 0; v < source.vertexCount(); ++v) {
        int b = blockOf[v];
        if (b < 0) {
            vm[v] = VertexId{next++};
        } else if (blockTarget[b] < 0) {
            blockTarget[b] = static_cast<int>(next);
            vm[v] = VertexId{next++};
        } else {
            vm[v] = VertexId{static_cast<std::uint32_t>(blockTarget[b])};
        }
    }
    std::vector<OrientedEdge> em(source.edgeCount());
    for (std::uint32_t i = 0; i < em.size(); ++i) em[i] = {EdgeId{i}, false};
    return verifyHom(source, quotient, std::move(vm), std::move(em));
}

MWHom inclusionHom(const MWGraph& sub, const MWGraph& whole) {
    std::vector<VertexId> vm(sub.vertexCount());
    for (std::uint32_t i = 0; i < vm.size(); ++i) vm[i] = whole.vertexByName(sub.vertices()[i].name);
    std::vector<OrientedEdge> em(sub.edgeCount());
    for (std::uint32_t i = 0; i < em.size(); ++i) em[i] = {whole.edgeByName(sub.edges()[i].name), false};
    return verifyHom(sub, whole, std::move(vm), std::move(em));
}

namespace {

class HomSearch {
public:
    HomSearch(const MWGraph& s, const MWGraph& t, double tol) : s_(s), t_(t), tol_(tol) {
        order_.resize(s.vertexCount());
        std::iota(order_.begin(), order_.end(), 0u);
        std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) {
            return s.degree(VertexId{a}) > s.degree(VertexId{b});
        });
        candidates_.resize(t.vertexCount());
        std::iota(candidates_.begin(), candidates_.end(), 0u);
        std::stable_sort(candidates_.begin(), candidates_.end(), [&](auto a, auto b) {
            return t.degree(VertexId{a}) > t.degree(VertexId{b});
        });
        map_.assign(s.vertexCount(), kUnset);
        degSum_.assign(t.vertexCount(), 0.0);
        pushV_.assign(t.vertexCount(), 0.0);
        preimages_.assign(t.vertexCount(), 0);
    }

    std::optional<MWHom> run() {
        if (!assignVertex(0)) return std::nullopt;
        return result_;
    }

private:
    static constexpr std::uint32_t kUnset = UINT32_MAX;

    bool assignVertex(std::size_t depth) {
        if (depth == order_.size()) return finish();
        std::size_t unhit = 0;
        for (auto c : preimages_)
            if (c == 0) ++unhit;
        // Surjectivity is forced by the vertex weight inequality.
        if (order_.size() - depth < unhit) return false;

        auto v = order_[depth];
        double wdeg = s_.weightedDegree(VertexId{v});
        for (auto c : candidates_) {
            // Weighted degree-sum bound: source edges leaving π⁻¹(c) push onto E_c.
            if (degSum_[c] + wdeg > t_.weightedDegree(VertexId{c}) * (1.0 + 1e-12) + 1e-15) continue;
            map_[v] = c;
            if (edgesCompatible(v)) {
                degSum_[c] += wdeg;
                pushV_[c] += s_.vertex(VertexId{v}).weight;
                ++preimages_[c];
                if (assignVertex(depth + 1)) return true;
                degSum_[c] -= wdeg;
                pushV_[c] -= s_.vertex(VertexId{v}).weight;
                --preimages_[c];
            }
            map_[v] = kUnset;
        }
        return false;
    }

    // Every source edge with both endpoints mapped needs a target edge with matching potential.
    bool edgesCompatible(std::uint32_t v) const {
        for (auto oe : s_.outgoing(VertexId{v})) {
            auto u = s_.head(oe).index;
            if (map_[u] == kUnset) continue;
            if (imageCandidates(oe).empty()) return false;
        }
        return true;
    }

    std::vector<OrientedEdge> imageCandidates(OrientedEdge e) const {
        std::vector<OrientedEdge> out;
        auto a = VertexId{map_[s_.tail(e).index]};
        auto b = VertexId{map_[s_.head(e).index]};
        for (auto te : t_.outgoing(a)) {
            if (t_.head(te) != b) continue;
            if (!anglesEqual(s_.alpha(e), t_.alpha(te), tol_)) continue;
            if (s_.edge(e.edge).weight > t_.edge(te.edge).weight * (1.0 + 1e-12)) continue;
            // Express the image of the canonical source orientation.
            out.push_back(e.reversed ? te.bar() : te);
        }
        return out;
    }

    bool finish() {
        for (std::size_t c = 0; c < pushV_.size(); ++c)
            if (pushV_[c] < t_.vertices()[c].weight * (1.0 - 1e-12)) return false;
        edgeImage_.assign(s_.edgeCount(), {});
        capacity_.resize(t_.edgeCount());
        for (std::size_t i = 0; i < capacity_.size(); ++i) capacity_[i] = t_.edges()[i].weight;
        edgeOrder_.resize(s_.edgeCount());
        std::iota(edgeOrder_.begin(), edgeOrder_.end(), 0u);
        // Most constrained edges first.
        std::vector<std::size_t> choices(s_.edgeCount());
        for (std::uint32_t i = 0; i < s_.edgeCount(); ++i) choices[i] = imageCandidates({EdgeId{i}, false}).size();
        std::stable_sort(edgeOrder_.begin(), edgeOrder_.end(), [&](auto a, auto b) { return choices[a] < choices[b]; });
        return assignEdge(0);
    }

    bool assignEdge(std::size_t depth) {
        if (depth == edgeOrder_.size()) {
            std::vector<VertexId> vm(map_.size());
            for (std::size_t i = 0; i < vm.size(); ++i) vm[i] = VertexId{map_[i]};
            auto h = verifyHom(s_, t_, std::move(vm), edgeImage_, tol_);
            if (!h.flags.isMWHom()) return false;
            result_ = std::move(h);
            return true;
        }
        auto i = edgeOrder_[depth];
        double w = s_.edges()[i].weight;
        for (auto img : imageCandidates({EdgeId{i}, false})) {
            auto& cap = capacity_[img.edge.index];
            if (w > cap * (1.0 + 1e-12) + 1e-15) continue;
            cap -= w;
            edgeImage_[i] = img;
            if (assignEdge(depth + 1)) return true;
            cap += w;
        }
        return false;
    }

    const MWGraph& s_;
    const MWGraph& t_;
    double tol_;
    std::vector<std::uint32_t> order_, candidates_, map_, edgeOrder_;
    std::vector<double> degSum_, pushV_, capacity_;
    std::vector<int> preimages_;
    std::vector<OrientedEdge> edgeImage_;
    std::optional<MWHom> result_;
};

}  // namespace

std::optional<MWHom> searchHom(const MWGraph& source, const MWGraph& target, HomSearchLimits limits) {
    if (source.vertexCount() > limits.maxSourceVertices)
        fail(ErrorCode::SizeLimitExceeded, "homomorphism search is limited to " +
                                               std::to_string(limits.maxSourceVertices) + " source vertices");
    if (target.vertexCount() == 0) {
        if (source.vertexCount() == 0) return verifyHom(source, target, {}, {});
        return std::nullopt;
    }
    return HomSearch(source, target, limits.tol).run();
}

}  // namespace mwg
