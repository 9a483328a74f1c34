#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "mwg/preorder.hpp"
#include "oracles.hpp"

using namespace mwg;
using th::E;

namespace {

bool hasRelation(const PerturbationCertificate& c, const std::string& lhs, const std::string& rhs, int shift) {
    return std::any_of(c.relations.begin(), c.relations.end(), [&](const CertifiedRelation& r) {
        return r.lhs == lhs && r.rhs == rhs && r.kind == RelationKind::SpectralShift && r.shift == shift &&
               r.numericallyVerified;
    });
}

bool allVerified(const PerturbationCertificate& c) {
    return std::all_of(c.relations.begin(), c.relations.end(),
                       [](const CertifiedRelation& r) { return r.numericallyVerified; });
}

// triangle 0-1-2 with a pendant 2-3
MWGraph paw(double alphaOnClosingEdge = 0.0, WeightKind kind = WeightKind::Standard) {
    return th::graph(kind, {"0", "1", "2", "3"},
                     {{"a", "0", "1"}, {"b", "1", "2"}, {"c", "2", "0", alphaOnClosingEdge}, {"p", "2", "3"}});
}

}  // namespace

TEST_SUITE("preorder") {

TEST_CASE("delete edge, combinatorial: fig1 grid") {
    auto p = th::fixture("fig1a").asPeriodic();
    for (double t : th::grid(64)) {
        auto w = floquetGraph(p, t);
        auto res = certifyDeleteEdge(w, w.edgeByName("e0"), WeightClass::Combinatorial);
        CHECK(allVerified(res.certificate));
        CHECK(res.certificate.forwardShift() == 1);
        CHECK(res.certificate.backwardShift() == 0);
    }
}

TEST_CASE("delete edge, combinatorial, strict somewhere") {
    auto w = th::fixture("fig1a").graph;
    auto res = certifyDeleteEdge(w, w.edgeByName("e0"), WeightClass::Combinatorial);
    auto a = th::vals(w), b = th::vals(res.graph);
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) strict = strict || b[k] < a[k] - 1e-9;
    CHECK(strict);
}

TEST_CASE("delete edge, standard: W <=_1 W' <=_1 W") {
    auto w = th::fixture("fig3a").graph;
    auto res = certifyDeleteEdge(w, w.edgeByName("e1"), WeightClass::Standard);
    CHECK(allVerified(res.certificate));
    CHECK(res.certificate.forwardShift().value_or(99) <= 1);
    CHECK(res.certificate.backwardShift().value_or(99) <= 1);
}

TEST_CASE("delete zero-potential loop, combinatorial: isospectral") {
    auto w = addEdge(th::cycle(4), EdgeData{"l", VertexId{1}, VertexId{1}, 1.0, 0.0}, WeightKind::Combinatorial);
    auto res = certifyDeleteEdge(w, w.edgeByName("l"), WeightClass::Combinatorial);
    CHECK(res.certificate.forwardShift() == 0);
    CHECK(res.certificate.backwardShift() == 0);
    CHECK(isIsospectral(spectrum(w), spectrum(res.graph)));
}

TEST_CASE("delete loop, standard weights: verified directions") {
    // α = 0 loop: W <=_0 W' holds, the reverse direction fails here
    auto base = th::path(3, WeightKind::Standard);
    auto zeroLoop = addEdge(base, EdgeData{"l", VertexId{0}, VertexId{0}, 1.0, 0.0}, WeightKind::Standard);
    auto r0 = certifyDeleteEdge(zeroLoop, zeroLoop.edgeByName("l"), WeightClass::Standard);
    CHECK(r0.certificate.forwardShift() == 0);
    CHECK_FALSE(shiftLess(spectrum(r0.graph), spectrum(zeroLoop), 0).holds);

    auto piLoop = addEdge(base, EdgeData{"l", VertexId{0}, VertexId{0}, 1.0, kPi}, WeightKind::Standard);
    auto rp = certifyDeleteEdge(piLoop, piLoop.edgeByName("l"), WeightClass::Standard);
    CHECK(rp.certificate.backwardShift() == 0);
    CHECK_FALSE(shiftLess(spectrum(piLoop), spectrum(rp.graph), 0).holds);
}

TEST_CASE("delete edge, general weights") {
    auto w = withWeightKind(th::fixture("fig1a").graph, WeightKind::Custom);
    CertifyOptions opt;
    opt.branch = GeneralBranch::A1;
    auto res = certifyDeleteEdge(w, w.edgeByName("e0"), WeightClass::General, opt);
    CHECK(allVerified(res.certificate));
    // A2 needs ρ∞ ≤ 1, which combinatorial weights violate
    opt.branch = GeneralBranch::A2;
    CHECK(th::errorOf([&] { certifyDeleteEdge(w, w.edgeByName("e0"), WeightClass::General, opt); }) ==
          ErrorCode::HypothesisNotSatisfied);
}

TEST_CASE("contract vertices, standard: fig2 grid and brackets") {
    auto p = th::fixture("fig2a").asPeriodic();
    const std::vector<double> mu{0.0, 1 - 1 / std::sqrt(2.0), 1 - 1 / std::sqrt(6.0), 1 + 1 / std::sqrt(6.0),
                                 1 + 1 / std::sqrt(2.0), 2.0};
    for (double t : th::grid(16)) {
        auto w = floquetGraph(p, t);
        auto res = certifyContractVertices(w, w.vertexByName("v1"), w.vertexByName("v2"), WeightClass::Standard);
        CHECK(allVerified(res.certificate));
        auto tilde = th::vals(res.graph);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(tilde[i] >= mu[i] - 1e-9);
            CHECK(tilde[i] <= mu[i + 1] + 1e-9);
        }
    }
}

TEST_CASE("contract vertices: r and s") {
    SUBCASE("non-adjacent gives s = 0") {
        auto w = th::path(4);
        auto res = certifyContractVertices(w, VertexId{0}, VertexId{3}, WeightClass::Combinatorial);
        CHECK(res.certificate.s == 0);
        CHECK(res.certificate.r == 1);
    }
    SUBCASE("single edge, combinatorial") {
        auto res = certifyContractVertices(th::path(2), VertexId{0}, VertexId{1}, WeightClass::Combinatorial);
        CHECK(res.certificate.r == 1);
        CHECK(res.certificate.s == 1);
        CHECK(hasRelation(res.certificate, "W'", "W", 1));
        // P2 spectrum (0, 2) against a single vertex with a zero loop (0)
        th::checkValues(th::vals(res.graph), {0});
    }
    CHECK(th::errorOf([] { certifyContractVertices(th::path(2), VertexId{0}, VertexId{0}, WeightClass::Combinatorial); }) ==
          ErrorCode::SameVertex);
}

TEST_CASE("contract edge, standard bridge: fig3 grid") {
    auto p = th::fixture("fig3a").asPeriodic();
    for (double t : th::grid(64)) {
        auto w = floquetGraph(p, t);
        auto res = certifyContractEdge(w, w.edgeByName("e0"), WeightClass::Standard);
        CHECK(allVerified(res.certificate));
        CHECK(res.certificate.forwardShift() == 0);
        CHECK(res.certificate.backwardShift() == 1);
    }
}

TEST_CASE("contract edge, standard, alpha = pi") {
    auto w = paw(kPi);
    auto res = certifyContractEdge(w, w.edgeByName("c"), WeightClass::Standard);
    CHECK(allVerified(res.certificate));
    CHECK(res.certificate.forwardShift() == 1);
    CHECK(res.certificate.backwardShift() == 1);
    // the shift-0 forward relation is false on this graph
    CHECK_FALSE(shiftLess(spectrum(w), spectrum(res.graph), 0).holds);
}

TEST_CASE("contract edge, standard, alpha = 0 improves the forward shift") {
    auto w = paw(0.0);
    auto res = certifyContractEdge(w, w.edgeByName("c"), WeightClass::Standard);
    CHECK(res.certificate.forwardShift() == 0);
    CHECK(res.certificate.backwardShift().value_or(99) <= 2);
}

TEST_CASE("contract edge, combinatorial") {
    auto w = paw(0.9, WeightKind::Combinatorial);
    auto res = certifyContractEdge(w, w.edgeByName("c"), WeightClass::Combinatorial);
    CHECK(allVerified(res.certificate));
    CHECK(res.certificate.r == 2);
    CHECK(res.certificate.forwardShift() == 1);
    CHECK(res.certificate.backwardShift() == 3);

    auto p2 = certifyContractEdge(th::path(2), EdgeId{0}, WeightClass::Combinatorial);
    th::checkValues(th::vals(p2.graph), {0});
    CHECK(shiftLess(spectrum(p2.graph), spectrum(th::path(2)), 1).holds);

    auto dbl = th::graph(WeightKind::Combinatorial, {"a", "b"}, {{"x", "a", "b"}, {"y", "a", "b"}});
    CHECK(th::errorOf([&] { certifyContractEdge(dbl, EdgeId{0}, WeightClass::Combinatorial); }) == ErrorCode::MultiEdge);
    auto loop = th::graph(WeightKind::Combinatorial, {"a"}, {{"l", "a", "a"}});
    CHECK(th::errorOf([&] { certifyContractEdge(loop, EdgeId{0}, WeightClass::Combinatorial); }) ==
          ErrorCode::LoopContraction);
}

TEST_CASE("contract pendant: fig4 grid") {
    auto p = th::fixture("fig4a").asPeriodic();
    for (double t : th::grid(64)) {
        auto w = floquetGraph(p, t);
        auto res = certifyContractPendant(w, w.edgeByName("e0"), WeightClass::Combinatorial);
        CHECK(allVerified(res.certificate));
        CHECK(res.certificate.forwardShift() == 0);
        CHECK(res.certificate.backwardShift() == 1);
    }
}

TEST_CASE("contract pendant: small cases") {
    auto star = th::graph(WeightKind::Combinatorial, {"c", "x", "y", "z"}, {{"a", "c", "x"}, {"b", "c", "y"}, {"d", "c", "z"}});
    auto res = certifyContractPendant(star, star.edgeByName("d"), WeightClass::Combinatorial);
    th::checkValues(th::vals(res.graph), {0, 1, 3});
    CHECK(allVerified(res.certificate));

    auto point = certifyContractPendant(th::path(2), EdgeId{0}, WeightClass::Standard);
    CHECK(point.graph.vertexCount() == 1);

    CHECK(th::errorOf([] { certifyContractPendant(th::cycle(3), EdgeId{0}, WeightClass::Combinatorial); }) ==
          ErrorCode::NotPendant);
}

TEST_CASE("delete vertex") {
    SUBCASE("degree one matches the pendant shifts") {
        auto w = th::fixture("fig4a").graph;
        auto res = certifyDeleteVertex(w, w.vertexByName("v0"), WeightClass::Combinatorial);
        CHECK(res.certificate.forwardShift() == 0);
        CHECK(res.certificate.backwardShift() == 1);
    }
    SUBCASE("K4 minus a degree-3 vertex") {
        auto res = certifyDeleteVertex(th::complete(4), VertexId{0}, WeightClass::Combinatorial);
        th::checkValues(th::vals(res.graph), {0, 3, 3});
        CHECK(res.certificate.forwardShift() == 2);
        CHECK(res.certificate.backwardShift() == 1);
        CHECK(shiftLess(spectrum(th::complete(4)), spectrum(res.graph), 2).holds);
    }
    SUBCASE("fig4a pendant, standard, over the grid") {
        auto p = th::fixture("fig4a").asPeriodic();
        for (double t : th::grid(16)) {
            auto w = withWeightKind(floquetGraph(p, t), WeightKind::Standard);
            auto res = certifyDeleteVertex(w, w.vertexByName("v0"), WeightClass::Standard);
            CHECK(allVerified(res.certificate));
            CHECK(res.certificate.forwardShift() == 0);
            CHECK(res.certificate.backwardShift() == 1);
        }
    }
    auto loopy = th::graph(WeightKind::Combinatorial, {"a", "b"}, {{"l", "a", "a"}, {"e", "a", "b"}});
    CHECK(th::errorOf([&] { certifyDeleteVertex(loopy, VertexId{0}, WeightClass::Combinatorial); }) ==
          ErrorCode::LoopAtVertex);
}

TEST_CASE("spanning subgraphs") {
    auto w8 = th::fixture("order-graph-w8").graph;
    auto rel = spanningSubgraphMonotone(w8, {w8.edgeByName("ED"), w8.edgeByName("CE")});
    CHECK(rel.numericallyVerified);
    auto w6 = th::fixture("order-graph-w6").graph;
    th::checkValues(th::vals(deleteEdges(w8, std::vector<EdgeId>{w8.edgeByName("ED"), w8.edgeByName("CE")},
                                         WeightKind::Combinatorial)),
                    th::vals(w6));
    CHECK(spanningSubgraphMonotone(w8, {}).minimalShift == 0);
    CHECK(th::errorOf([&] { spanningSubgraphMonotone(withWeightKind(w8, WeightKind::Standard), {}); }) ==
          ErrorCode::NotCombinatorial);
}

TEST_CASE("clique multiplicity bounds") {
    auto k3 = cliqueMultiplicityBound(th::fixture("k-series-k3-double").graph);
    REQUIRE(k3.has_value());
    CHECK(k3->d == 3);
    CHECK(k3->multiplicityLowerBound == 1);
    CHECK(k3->observedMultiplicity == 1);
    for (const char* name : {"fig5-g1", "fig5-g2", "fig5-g3"}) {
        auto b = cliqueMultiplicityBound(th::fixture(name).graph);
        REQUIRE(b.has_value());
        CHECK(b->d == 6);
        CHECK(b->multiplicityLowerBound == 3);
        CHECK(b->observedMultiplicity >= 3);
    }
    auto k4 = cliqueMultiplicityBound(th::complete(4));
    REQUIRE(k4.has_value());
    CHECK(k4->multiplicityLowerBound == 3);
    CHECK(k4->observedMultiplicity == 3);
    CHECK_FALSE(cliqueMultiplicityBound(th::cycle(6)).has_value());
    CHECK(th::errorOf([] { cliqueMultiplicityBound(deleteEdge(th::path(3), EdgeId{0}, WeightKind::Combinatorial)); }) ==
          ErrorCode::Disconnected);
    CHECK(th::errorOf([] { cliqueMultiplicityBound(th::cycle(4, 1.0)); }) == ErrorCode::NonzeroPotential);
}

TEST_CASE("clique number agrees with brute force") {
    for (const char* name : {"petersen", "fig5-g1", "fig5-g3", "order-graph-w8", "k-series-k6-double"}) {
        auto g = th::fixture(name).graph;
        CHECK(cliqueNumber(g) == oracle::cliqueNumber(g));
    }
}

TEST_CASE("excludeClique") {
    // cube graph: 12 edges, spectrum 0, 2, 2, 2, 4, 4, 4, 6 has no 5
    std::vector<E> es;
    for (int v = 0; v < 8; ++v)
        for (int b = 1; b < 8; b <<= 1)
            if (v < (v ^ b)) es.push_back({"e" + std::to_string(v) + "_" + std::to_string(v ^ b), std::to_string(v),
                                           std::to_string(v ^ b)});
    auto cube = th::graph(WeightKind::Combinatorial, {"0", "1", "2", "3", "4", "5", "6", "7"}, es);
    REQUIRE(cube.edgeCount() == 12);
    CHECK(excludeClique(spectrum(cube), 5, 12));
    CHECK(oracle::cliqueNumber(cube) < 5);

    auto pet = th::fixture("petersen").graph;
    CHECK_FALSE(excludeClique(spectrum(pet), 5, 15));
    CHECK(cliqueNumber(pet) == 2);

    // too few edges for a 5-clique
    CHECK(excludeClique(spectrum(th::complete(5)), 5, 5 * 4 / 2 - 1));
}

TEST_CASE("minors") {
    auto w8 = th::fixture("order-graph-w8").graph;
    SUBCASE("single deletion reduces to certifyDeleteEdge") {
        auto m = certifyMinor(w8, {{MinorStepKind::DeleteEdge, "CE"}}, WeightClass::Combinatorial);
        auto d = certifyDeleteEdge(w8, w8.edgeByName("CE"), WeightClass::Combinatorial);
        CHECK(m.certificate.certificate.forwardShift() == d.certificate.forwardShift());
        CHECK(m.certificate.certificate.backwardShift() == d.certificate.backwardShift());
    }
    SUBCASE("W8 to W6 by two deletions") {
        auto m = certifyMinor(w8, {{MinorStepKind::DeleteEdge, "ED"}, {MinorStepKind::DeleteEdge, "CE"}},
                              WeightClass::Combinatorial);
        CHECK(m.certificate.p == 2);
        CHECK(m.certificate.certificate.forwardShift() == 2);
        CHECK(m.certificate.certificate.backwardShift() == 0);
        th::checkValues(th::vals(m.graph), th::vals(th::fixture("order-graph-w6").graph));
    }
    SUBCASE("multiplicity persistence") {
        auto k6 = th::fixture("k-series-k6").graph;
        auto m = certifyMinor(k6, {{MinorStepKind::DeleteEdge, k6.edges()[0].name}}, WeightClass::Combinatorial);
        REQUIRE_FALSE(m.certificate.persistent.empty());
        const auto& p = m.certificate.persistent.front();
        CHECK(p.lambda == doctest::Approx(6.0));
        CHECK(p.multiplicity == 5);
        CHECK(p.guaranteed == 4);
        CHECK(p.observed >= p.guaranteed);
    }
    CHECK(th::errorOf([&] { certifyMinor(w8, {{MinorStepKind::DeleteEdge, "nope"}}, WeightClass::Combinatorial); }) ==
          ErrorCode::InvalidStep);
    CHECK(th::errorOf([&] {
              certifyMinor(th::fixture("k-series-k3-double").graph, {}, WeightClass::Combinatorial);
          }) == ErrorCode::NotSimple);
    CHECK(th::errorOf([&] { certifyMinor(th::cycle(4, 1.0), {}, WeightClass::Combinatorial); }) ==
          ErrorCode::NonzeroPotential);
}

TEST_CASE("verifyRelation rejects false claims") {
    CertifiedRelation rel;
    rel.lhs = "W";
    rel.rhs = "W'";
    rel.shift = 0;
    auto big = spectrum(th::complete(4)), small = spectrum(th::path(4));
    CHECK(verifyRelation(rel, small, big).numericallyVerified);
    CHECK(th::errorOf([&] { verifyRelation(rel, big, small); }) == ErrorCode::CertificateViolation);
}

}
