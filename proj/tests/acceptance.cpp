// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mwg/angle.hpp"
#include "mwg/covering.hpp"
#include "mwg/io.hpp"
#include "mwg/preorder.hpp"
#include "mwg/spectra.hpp"
#include "property_suite.hpp"

#ifndef MWG_FIXTURE_DIR
#define MWG_FIXTURE_DIR "fixtures"
#endif

using namespace mwg;

namespace {

// Pinned tolerances.
constexpr double kSpectrumTol = 1e-9;     // criteria 1, 3
constexpr double kShiftTol = 1e-9;        // criteria 2, 4, 5
constexpr double kCliqueTol = 1e-8;       // criterion 6
constexpr double kBracketTol = 2e-3;      // criterion 7, against 3-decimal values
constexpr double kPointWidthTol = 1e-8;   // criterion 7, J'_4
constexpr double kTreeBudgetMs = 1.0;
constexpr double kInterlaceBudgetS = 0.1;
constexpr double kPropertyBudgetS = 60.0;
constexpr int kGrid = 64;

struct Verdict {
    bool ok = true;
    std::string detail;
};

GraphDocument fixture(const std::string& name) { return loadGraphDocument(std::string(MWG_FIXTURE_DIR) + "/" + name + ".mwg"); }

std::vector<double> gridTs() {
    std::vector<double> ts(kGrid);
    for (int j = 0; j < kGrid; ++j) ts[j] = kTwoPi * j / (kGrid - 1);
    return ts;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Verdict treeSpectrum() {
    const auto p = fixture("fig1b").asPeriodic();
    const double s5 = std::sqrt(5.0);
    const std::vector<double> expect{0.0, (3 - s5) / 2, (5 - s5) / 2, (3 + s5) / 2, (5 + s5) / 2};
    double err = 0.0;
    for (double t : gridTs()) {
        const auto vals = spectrum(floquetGraph(p, t)).values;
        if (vals.size() != expect.size()) return {false, "wrong length"};
        for (std::size_t i = 0; i < vals.size(); ++i) err = std::max(err, std::abs(vals[i] - expect[i]));
    }
    const auto g = floquetGraph(p, 1.0);
    std::vector<double> ms;
    for (int rep = 0; rep < 51; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        volatile double sink = spectrum(g).values.back();
        (void)sink;
        ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    std::nth_element(ms.begin(), ms.begin() + 25, ms.end());
    const double median = ms[25];
    return {err <= kSpectrumTol && median < kTreeBudgetMs,
            "max err " + fmt("%.2e", err) + ", median " + fmt("%.4f", median) + " ms"};
}

Verdict edgeDeletion() {
    const auto start = std::chrono::steady_clock::now();
    const auto w = fixture("fig1a").asPeriodic();
    const auto wPrime = spectrum(floquetGraph(fixture("fig1b").asPeriodic(), 0.0));
    bool interlace = true, sharp = false;
    for (double t : gridTs()) {
        const auto wt = spectrum(floquetGraph(w, t));
        interlace = interlace && shiftLess(wt, wPrime, 1, kShiftTol).holds && shiftLess(wPrime, wt, 0, kShiftTol).holds;
        sharp = sharp || !shiftLess(wt, wPrime, 0, kShiftTol).holds;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {interlace && sharp && secs < kInterlaceBudgetS,
            std::string("interlacing ") + (interlace ? "holds" : "fails") + ", shift 0 " +
                (sharp ? "fails somewhere" : "never fails") + ", " + fmt("%.4f", secs) + " s"};
}

Verdict contractionBrackets() {
    const auto tree = fixture("fig2a").asPeriodic();
    const auto contracted = fixture("fig2b").asPeriodic();
    const std::vector<double> mu{0.0, 1 - 1 / std::sqrt(2.0), 1 - 1 / std::sqrt(6.0),
                                 1 + 1 / std::sqrt(6.0), 1 + 1 / std::sqrt(2.0), 2.0};
    double endpointErr = 0.0;
    const auto treeVals = spectrum(floquetGraph(tree, 0.0)).values;
    for (std::size_t i = 0; i < mu.size(); ++i) endpointErr = std::max(endpointErr, std::abs(treeVals.at(i) - mu[i]));
    double worst = 0.0;  // largest excursion outside [μ_i, μ_{i+1}]
    for (double t : gridTs()) {
        const auto vals = spectrum(floquetGraph(contracted, t)).values;
        if (vals.size() != 5) return {false, "expected five eigenvalues"};
        for (std::size_t i = 0; i < 5; ++i)
            worst = std::max({worst, mu[i] - vals[i], vals[i] - mu[i + 1]});
    }
    return {worst <= kSpectrumTol && endpointErr <= kSpectrumTol,
            "max excursion " + fmt("%.2e", std::max(worst, 0.0)) + ", endpoint err " + fmt("%.2e", endpointErr)};
}

Verdict twoSided(const std::string& a, const std::string& b) {
    const auto w = fixture(a).asPeriodic();
    const auto wp = fixture(b).asPeriodic();
    int bad = 0;
    for (double t : gridTs()) {
        const auto s = spectrum(floquetGraph(w, t)), sp = spectrum(floquetGraph(wp, t));
        if (!shiftLess(s, sp, 0, kShiftTol).holds || !shiftLess(sp, s, 1, kShiftTol).holds) ++bad;
    }
    return {bad == 0, std::to_string(kGrid - bad) + "/" + std::to_string(kGrid) + " grid points satisfy W <=_0 W' <=_1 W"};
}

Verdict cliqueSpectra() {
    std::ostringstream detail;
    bool ok = true;
    auto matches = [&](const std::string& name, const std::vector<std::pair<double, int>>& want) {
        auto s = spectrum(fixture(name).graph);
        s.tolerance = kCliqueTol;
        const auto got = s.grouped();
        bool same = got.size() == want.size();
        for (std::size_t i = 0; same && i < got.size(); ++i)
            same = std::abs(got[i].first - want[i].first) <= kCliqueTol && got[i].second == want[i].second;
        if (!same) detail << name << " mismatch; ";
        ok = ok && same;
    };
    matches("k-series-k3-double", {{0, 1}, {3, 1}, {5, 1}});
    matches("k-series-k4-double", {{0, 1}, {4, 2}, {6, 1}});
    matches("petersen", {{0, 1}, {2, 5}, {5, 4}});
    for (const char* name : {"fig5-g1", "fig5-g2", "fig5-g3"}) {
        const int m = spectrum(fixture(name).graph).multiplicity(6.0, kCliqueTol);
        detail << name << " mult(6)=" << m << "; ";
        ok = ok && m >= 3;
    }
    return {ok, detail.str()};
}

Verdict coveringBrackets() {
    const auto p = fixture("fig-brack-quotient").asPeriodic();
    const auto split = fixture("fig-brack-split").asPeriodic();
    const auto j = bracketByVirtualisation(p, {p.quotient.edgeByName("e0")}, {p.quotient.vertexByName("v1")});
    const auto jp = bracketByContraction(p, split, split.quotient.vertexByName("v1"), split.quotient.vertexByName("v8"));
    const auto jpp = intersectBrackets({j, jp});

    using Table = std::vector<std::pair<double, double>>;
    const Table wantJ{{0, 0.121}, {0.116, 0.358}, {0.5, 0.744}, {0.713, 1.256}, {1.145, 1.642}, {1.638, 1.879}, {1.889, 2}};
    const Table wantJp{{0, 0.108}, {0.108, 0.463}, {0.463, 1}, {1, 1}, {1, 1.536}, {1.536, 1.891}, {1.891, 2}};
    const Table wantJpp{{0, 0.108}, {0.116, 0.358}, {0.5, 0.744}, {1, 1}, {1.145, 1.536}, {1.638, 1.879}, {1.891, 2}};
    double err = 0.0;
    auto compare = [&](const BracketReport& r, const Table& want) {
        if (r.intervals.size() != want.size()) return false;
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (r.intervals[i].empty) return false;
            err = std::max({err, std::abs(r.intervals[i].lo - want[i].first), std::abs(r.intervals[i].hi - want[i].second)});
        }
        return true;
    };
    const bool shapes = compare(j, wantJ) && compare(jp, wantJp) && compare(jpp, wantJpp);
    const double pointWidth = jp.intervals.size() > 3 ? jp.intervals[3].width() : INFINITY;
    // a gap strictly between each consecutive pair of J'' intervals
    bool allGaps = jpp.gaps.size() == 6;
    for (std::size_t i = 0; allGaps && i < 6; ++i)
        allGaps = jpp.gaps[i].lo >= jpp.intervals[i].hi - 1e-12 && jpp.gaps[i].hi <= jpp.intervals[i + 1].lo + 1e-12 &&
                  jpp.gaps[i].hi > jpp.gaps[i].lo;
    return {shapes && err <= kBracketTol && pointWidth < kPointWidthTol && allGaps,
            "max endpoint err " + fmt("%.2e", err) + ", |J'_4| " + fmt("%.1e", pointWidth) + ", " +
                std::to_string(jpp.gaps.size()) + " gaps in J''"};
}

Verdict propertySuites() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = props::runAll(props::Config{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = secs < kPropertyBudgetS;
    std::ostringstream detail;
    for (const auto& r : results) {
        const bool good = r.ok() && r.cases >= 200;
        ok = ok && good;
        std::printf("    %-4s %-48s %4d cases %7.3f s%s%s\n", good ? "ok" : "FAIL", r.name.c_str(), r.cases, r.seconds,
                    r.firstFailure.empty() ? "" : "  ", r.firstFailure.c_str());
    }
    detail << results.size() << " suites, " << fmt("%.2f", secs) << " s";
    return {ok, detail.str()};
}

Verdict oracleEquivalence() {
    const auto cheeger = props::cheegerOracleEquivalence();
    const auto frus = props::frustrationOracleEquivalence(props::Config{});
    for (const auto* r : {&cheeger, &frus})
        if (!r->ok()) std::printf("    %s: %s\n", r->name.c_str(), r->firstFailure.c_str());
    return {cheeger.ok() && frus.ok() && frus.cases >= 200,
            std::to_string(cheeger.cases) + " Cheeger cases, " + std::to_string(frus.cases) + " frustration cases, " +
                fmt("%.2f", cheeger.seconds + frus.seconds) + " s"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"tree spectrum", treeSpectrum},
        {"edge-deletion interlacing", edgeDeletion},
        {"vertex-contraction bracketing", contractionBrackets},
        {"edge-contraction bridge interlacing", [] { return twoSided("fig3a", "fig3b"); }},
        {"pendant contraction", [] { return twoSided("fig4a", "fig4b"); }},
        {"clique spectra", cliqueSpectra},
        {"covering brackets", coveringBrackets},
        {"property suites", propertySuites},
        {"oracle equivalence", oracleEquivalence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.ok;
        std::printf("%s %zu %s: %s\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
