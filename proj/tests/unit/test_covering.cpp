#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "mwg/covering.hpp"
#include "property_suite.hpp"

using namespace mwg;

namespace {

PeriodicGraph brack() { return th::fixture("fig-brack-quotient").asPeriodic(); }
PeriodicGraph brackSplit() { return th::fixture("fig-brack-split").asPeriodic(); }

BracketReport jReport() {
    auto p = brack();
    return bracketByVirtualisation(p, {p.quotient.edgeByName("e0")}, {p.quotient.vertexByName("v1")});
}

BracketReport jPrimeReport() {
    auto p = brack();
    auto s = brackSplit();
    return bracketByContraction(p, s, s.quotient.vertexByName("v1"), s.quotient.vertexByName("v8"));
}

bool unionContains(const std::vector<Interval>& outer, const Interval& piece) {
    return std::any_of(outer.begin(), outer.end(), [&](const Interval& o) {
        return !o.empty && piece.lo >= o.lo - 1e-9 && piece.hi <= o.hi + 1e-9;
    });
}

}  // namespace

TEST_SUITE("covering") {

TEST_CASE("interval helpers") {
    auto x = intersect({0, 2}, {1, 3});
    CHECK(x.lo == 1);
    CHECK(x.hi == 2);
    CHECK(intersect({0, 1}, {2, 3}).empty);
    auto u = normaliseUnion({{2, 3}, {0, 1}, {0.5, 1.5}, {3, 3}});
    REQUIRE(u.size() == 2);
    CHECK(u[0].hi == 1.5);
    CHECK(u[1].lo == 2);
    auto gaps = complementGaps(u, 0, 4);
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0].lo == 1.5);
    CHECK(gaps[0].hi == 2);
    CHECK(gaps[1].lo == 3);
    CHECK(gaps[1].hi == 4);
}

TEST_CASE("floquetGraph") {
    auto p = brack();
    auto g0 = floquetGraph(p, 0.0);
    for (std::size_t i = 0; i < g0.edgeCount(); ++i) CHECK(g0.edges()[i].alpha == p.quotient.edges()[i].alpha);
    CHECK(assembleLaplacian(floquetGraph(p, 1.3)).dimension() == 7);

    PeriodicGraph c{th::cycle(5), {0, 0, 0, 0, 1}};
    auto g = floquetGraph(c, kPi);
    double flux = 0.0;
    for (const auto& e : g.edges()) flux += e.alpha;
    CHECK(isPiAngle(flux));

    PeriodicGraph bad{th::cycle(5), {1}};
    CHECK(th::errorOf([&] { floquetGraph(bad, 0.1); }) == ErrorCode::PartialMap);
}

TEST_CASE("band sweeps") {
    auto tree = th::fixture("fig1b").asPeriodic();
    auto flat = bandSweep(tree, 33);
    for (std::size_t k = 0; k < flat.lower.size(); ++k) CHECK(flat.upper[k] - flat.lower[k] < 1e-12);

    auto coarse = bandSweep(brack(), 2), fine = bandSweep(brack(), 256);
    REQUIRE(fine.lower.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(fine.lower[k] <= coarse.lower[k] + 1e-12);
        CHECK(fine.upper[k] >= coarse.upper[k] - 1e-12);
    }
    CHECK(th::errorOf([] { bandSweep(brack(), 1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("bipartite quotient: bands symmetric about 1") {
    auto sweep = bandSweep(brack(), 64);
    for (const auto& s : sweep.spectra)
        for (std::size_t k = 0; k < s.size(); ++k) CHECK(s[k] + s[s.size() - 1 - k] == doctest::Approx(2.0));
}

TEST_CASE("virtualiseEdges") {
    auto g = th::fixture("fig3a").graph;
    auto same = virtualiseEdges(g, {});
    th::checkValues(th::vals(same), th::vals(g));
    const auto e = std::vector<EdgeId>{g.edgeByName("e1")};
    auto virt = virtualiseEdges(g, e);
    auto del = deleteEdge(g, e[0], WeightKind::Standard);
    CHECK(virt.weightKind() == WeightKind::Custom);
    REQUIRE(virt.edgeCount() == del.edgeCount());
    for (std::size_t i = 0; i < virt.edgeCount(); ++i) {
        CHECK(virt.edges()[i].weight == del.edges()[i].weight);
        CHECK(virt.edges()[i].alpha == del.edges()[i].alpha);
    }
    int differ = 0;
    for (std::size_t v = 0; v < g.vertexCount(); ++v) {
        CHECK(virt.vertices()[v].weight == g.vertices()[v].weight);
        differ += virt.vertices()[v].weight != del.vertices()[v].weight;
    }
    CHECK(differ == 2);  // the two endpoints of e1
}

TEST_CASE("virtualiseVertices") {
    auto g = th::fixture("fig1a").graph;
    CHECK((virtualiseVertices(g, {}).matrix - assembleLaplacian(g).matrix).norm() < 1e-15);

    auto p3 = th::path(3);
    auto dir = virtualiseVertices(p3, {VertexId{1}});
    REQUIRE(dir.dimension() == 2);
    CHECK(std::abs(dir.matrix(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(dir.matrix(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(dir.matrix(0, 1)) < 1e-15);
    auto drop = virtualiseVertices(p3, {VertexId{1}}, VertexVirtualisation::Drop);
    CHECK(std::abs(drop.matrix(0, 0)) < 1e-15);

    CHECK(th::errorOf([&] { virtualiseVertices(p3, {VertexId{0}, VertexId{1}, VertexId{2}}); }) ==
          ErrorCode::AllVerticesVirtualised);
}

TEST_CASE("virtualisation brackets the Floquet spectra") {
    auto p = brack();
    auto lower = spectrum(virtualiseEdges(p.quotient, {p.quotient.edgeByName("e0")}));
    auto upper = eigenvalues(virtualiseVertices(p.quotient, {p.quotient.vertexByName("v1")}));
    for (double t : th::grid(32)) {
        auto wt = spectrum(floquetGraph(p, t));
        CHECK(shiftLess(lower, wt, 0).holds);
        CHECK(shiftLess(wt, upper, 0).holds);
    }
}

TEST_CASE("J brackets") {
    auto j = jReport();
    const std::vector<std::pair<double, double>> want{{0, 0.121},     {0.116, 0.358}, {0.5, 0.744}, {0.713, 1.256},
                                                      {1.145, 1.642}, {1.638, 1.879}, {1.889, 2}};
    REQUIRE(j.intervals.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(std::abs(j.intervals[k].lo - want[k].first) <= 2e-3);
        CHECK(std::abs(j.intervals[k].hi - want[k].second) <= 2e-3);
    }
    CHECK(intersect(j.intervals[1], j.intervals[2]).empty);
    CHECK(intersect(j.intervals[5], j.intervals[6]).empty);
    CHECK(j.gaps.size() == 2);
    checkContainment(j, bandSweep(brack(), 512));
}

TEST_CASE("J' brackets from the contraction") {
    auto jp = jPrimeReport();
    const std::vector<std::pair<double, double>> want{{0, 0.108}, {0.108, 0.463}, {0.463, 1},  {1, 1},
                                                      {1, 1.536}, {1.536, 1.891}, {1.891, 2}};
    REQUIRE(jp.intervals.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(std::abs(jp.intervals[k].lo - want[k].first) <= 2e-3);
        CHECK(std::abs(jp.intervals[k].hi - want[k].second) <= 2e-3);
    }
    CHECK(jp.intervals[3].width() < 1e-8);
    auto s = brackSplit();
    CHECK(th::errorOf([&] {
              bracketByContraction(brack(), s, s.quotient.vertexByName("v1"), s.quotient.vertexByName("v1"));
          }) == ErrorCode::SameVertex);
}

TEST_CASE("J'' and gaps between all bands") {
    auto jpp = intersectBrackets({jReport(), jPrimeReport()});
    const std::vector<std::pair<double, double>> want{{0, 0.108},     {0.116, 0.358}, {0.5, 0.744}, {1, 1},
                                                      {1.145, 1.536}, {1.638, 1.879}, {1.891, 2}};
    REQUIRE(jpp.intervals.size() == 7);
    for (std::size_t k = 0; k < 7; ++k) {
        CHECK(std::abs(jpp.intervals[k].lo - want[k].first) <= 2e-3);
        CHECK(std::abs(jpp.intervals[k].hi - want[k].second) <= 2e-3);
    }
    CHECK(jpp.gaps.size() == 6);
    checkContainment(jpp, bandSweep(brack(), 512));
    // refinement never enlarges the union
    for (const auto& piece : jpp.unionPieces) {
        CHECK(unionContains(jReport().unionPieces, piece));
        CHECK(unionContains(jPrimeReport().unionPieces, piece));
    }
}

TEST_CASE("intersecting with self or the full range changes nothing") {
    auto j = jReport();
    BracketReport full = j;
    for (auto& iv : full.intervals) iv = {0.0, 2.0};
    finaliseReport(full);
    for (const auto& other : {j, full}) {
        auto x = intersectBrackets({j, other});
        REQUIRE(x.intervals.size() == j.intervals.size());
        for (std::size_t k = 0; k < j.intervals.size(); ++k) {
            CHECK(x.intervals[k].lo == doctest::Approx(j.intervals[k].lo).epsilon(1e-12));
            CHECK(x.intervals[k].hi == doctest::Approx(j.intervals[k].hi).epsilon(1e-12));
        }
    }
    BracketReport shorter = j;
    shorter.intervals.pop_back();
    CHECK(th::errorOf([&] { intersectBrackets({j, shorter}); }) == ErrorCode::IndexCountMismatch);
    CHECK(th::errorOf([] { intersectBrackets({}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("trivial bracketing on a zero cocycle") {
    auto g = floquetGraph(th::fixture("fig1a").asPeriodic(), 0.7);
    PeriodicGraph p{g, std::vector<int>(g.edgeCount(), 0)};
    auto r = bracketByVirtualisation(p, {}, {});
    auto s = th::vals(g);
    REQUIRE(r.intervals.size() == s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        CHECK(r.intervals[k].lo == doctest::Approx(s[k]));
        CHECK(r.intervals[k].width() < 1e-12);
    }
}

TEST_CASE("random periodic graphs: swept bands stay inside the brackets") {
    props::Rng rng(5);
    props::GraphShape shape;
    shape.minVertices = 3;
    shape.maxVertices = 8;
    shape.maxExtraEdges = 4;
    shape.potential = props::Potential::Zero;
    shape.kind = WeightKind::Standard;
    int tried = 0;
    while (tried < 20) {
        auto g = props::randomGraph(rng, shape);
        // the tree edges come first; put the cocycle on the extra ones
        PeriodicGraph p{g, std::vector<int>(g.edgeCount(), 0)};
        std::vector<EdgeId> e0;
        std::vector<VertexId> v0;
        for (std::uint32_t i = static_cast<std::uint32_t>(g.vertexCount()) - 1; i < g.edgeCount(); ++i) {
            p.cocycle[i] = 1;
            e0.push_back(EdgeId{i});
            const auto head = g.edges()[i].head;
            if (std::find(v0.begin(), v0.end(), head) == v0.end()) v0.push_back(head);
        }
        if (e0.empty() || v0.size() >= g.vertexCount()) continue;
        ++tried;
        BracketOptions opt;
        opt.sweepResolution = 64;
        auto r = bracketByVirtualisation(p, e0, v0, opt);
        CHECK_NOTHROW(checkContainment(r, bandSweep(p, 64)));
    }
}

TEST_CASE("a wrong bracket is caught") {
    auto r = jReport();
    r.intervals[0] = {0.5, 0.6};
    finaliseReport(r);
    CHECK(th::errorOf([&] { checkContainment(r, bandSweep(brack(), 32)); }) == ErrorCode::BracketViolation);
}

TEST_CASE("t-dependent quotient is rejected without virtualisation") {
    CHECK(th::errorOf([] { bracketByVirtualisation(brack(), {}, {}); }) == ErrorCode::NotTIndependent);
}

}
