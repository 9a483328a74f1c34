#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "mwg/angle.hpp"
#include "mwg/error.hpp"
#include "mwg/graph.hpp"
#include "mwg/io.hpp"
#include "mwg/spectra.hpp"

#ifndef MWG_FIXTURE_DIR
#define MWG_FIXTURE_DIR "fixtures"
#endif

namespace th {

struct E {
    std::string name, tail, head;
    double alpha = 0.0;
    std::optional<double> weight;
};

inline mwg::MWGraph graph(mwg::WeightKind kind, const std::vector<std::string>& vertices, const std::vector<E>& edges) {
    std::vector<mwg::VertexSpec> vs;
    for (const auto& v : vertices) vs.push_back({v, std::nullopt});
    std::vector<mwg::EdgeSpec> es;
    for (const auto& e : edges) es.push_back({e.name, e.tail, e.head, e.weight, e.alpha});
    return mwg::buildGraph(vs, es, kind);
}

inline std::string vname(int i) { return std::to_string(i); }

inline mwg::MWGraph path(int n, mwg::WeightKind kind = mwg::WeightKind::Combinatorial) {
    std::vector<std::string> vs;
    std::vector<E> es;
    for (int i = 0; i < n; ++i) vs.push_back(vname(i));
    for (int i = 0; i + 1 < n; ++i) es.push_back({"e" + vname(i), vname(i), vname(i + 1)});
    return graph(kind, vs, es);
}

/// Cycle with the whole flux on the closing edge.
inline mwg::MWGraph cycle(int n, double flux = 0.0, mwg::WeightKind kind = mwg::WeightKind::Combinatorial) {
    std::vector<std::string> vs;
    std::vector<E> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back(vname(i));
        es.push_back({"e" + vname(i), vname(i), vname((i + 1) % n), i + 1 == n ? flux : 0.0});
    }
    return graph(kind, vs, es);
}

inline mwg::MWGraph complete(int n, mwg::WeightKind kind = mwg::WeightKind::Combinatorial) {
    std::vector<std::string> vs;
    std::vector<E> es;
    for (int i = 0; i < n; ++i) vs.push_back(vname(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back({"e" + vname(i) + "_" + vname(j), vname(i), vname(j)});
    return graph(kind, vs, es);
}

inline mwg::GraphDocument fixture(const std::string& name) {
    return mwg::loadGraphDocument(std::string(MWG_FIXTURE_DIR) + "/" + name + ".mwg");
}

inline std::vector<double> vals(const mwg::MWGraph& g) { return mwg::spectrum(g).values; }

inline void checkValues(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-9) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        INFO("index " << i << ": got " << got[i] << ", want " << want[i]);
        CHECK(std::abs(got[i] - want[i]) <= tol);
    }
}

inline std::vector<double> grid(int n = 64) {
    std::vector<double> ts(n);
    for (int j = 0; j < n; ++j) ts[j] = mwg::kTwoPi * j / (n - 1);
    return ts;
}

template <class F>
mwg::ErrorCode errorOf(F&& f) {
    try {
        f();
    } catch (const mwg::Error& e) {
        return e.code();
    }
    return mwg::ErrorCode::Ok;
}

}  // namespace th
