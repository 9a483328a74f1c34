#include "mwg/mwg.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "mwg/cheeger.hpp"
#include "mwg/covering.hpp"
#include "mwg/error.hpp"
#include "mwg/homomorphism.hpp"
#include "mwg/io.hpp"
#include "mwg/preorder.hpp"
#include "mwg/spectra.hpp"

struct mwg_graph {
    mwg::GraphDocument doc;
};

namespace {

using namespace mwg;

thread_local std::string lastMessage;
thread_local int lastStatus = MWG_OK;

int record(int status, const char* message) {
    lastStatus = status;
    lastMessage = message ? message : "";
    return status;
}

template <class F>
int guarded(F&& body) {
    try {
        body();
        lastStatus = MWG_OK;
        lastMessage.clear();
        return MWG_OK;
    } catch (const Error& e) {
        return record(static_cast<int>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return record(MWG_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return record(MWG_INTERNAL_ERROR, e.what());
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

char* dupString(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const std::string& s) {
    if (out) *out = dupString(s);
}

mwg_graph* wrap(GraphDocument doc) { return new mwg_graph{std::move(doc)}; }

std::vector<std::string> splitList(const char* text) {
    std::vector<std::string> out;
    if (!text) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Keeps the cocycle of edges that survive (matched by name).
std::vector<int> carryCocycle(const GraphDocument& from, const MWGraph& to) {
    if (!from.periodic()) return {};
    std::vector<int> c(to.edgeCount(), 0);
    for (std::size_t i = 0; i < to.edgeCount(); ++i)
        if (auto e = from.graph.findEdge(to.edges()[i].name)) c[i] = from.cocycle[e->index];
    return c;
}

WeightClass weightClassArg(const char* s) {
    if (!s) return WeightClass::Combinatorial;
    try {
        return parseWeightClass(s);
    } catch (const Error&) {
        fail(ErrorCode::InvalidArgument, std::string("unknown weight class '") + s + "'");
    }
}

PotentialRange rangeArg(const char* s) {
    if (!s || std::strcmp(s, "auto") == 0) return PotentialRange::Auto;
    if (std::strcmp(s, "signed") == 0) return PotentialRange::Signed;
    if (std::strcmp(s, "circle") == 0) return PotentialRange::Circle;
    fail(ErrorCode::InvalidArgument, std::string("unknown potential range '") + s + "'");
}

GeneralBranch branchArg(const std::string& s) {
    if (s == "A1") return GeneralBranch::A1;
    if (s == "A2") return GeneralBranch::A2;
    if (s == "B") return GeneralBranch::B;
    if (s == "C") return GeneralBranch::C;
    fail(ErrorCode::InvalidArgument, "unknown branch '" + s + "' (A1, A2, B or C)");
}

void checkResolution(int resolution) {
    if (resolution < 2 || resolution > 1000000) fail(ErrorCode::InvalidArgument, "resolution must lie in [2, 1e6]");
}

}  // namespace

extern "C" {

const char* mwg_last_error(void) { return lastMessage.c_str(); }
int mwg_last_status(void) { return lastStatus; }

const char* mwg_status_name(int status) {
    if (status == MWG_INTERNAL_ERROR) return "INTERNAL_ERROR";
    if (status < 0 || status > MWG_INVALID_ARGUMENT) return "UNKNOWN_STATUS";
    return errorName(static_cast<ErrorCode>(status)).data();
}

void mwg_string_free(char* s) { std::free(s); }

int mwg_graph_load(const char* path, mwg_graph** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = wrap(loadGraphDocument(path));
    });
}

int mwg_graph_parse(const char* text, mwg_graph** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = wrap(parseGraphDocument(text));
    });
}

int mwg_graph_save(const mwg_graph* g, const char* path) {
    return guarded([&] {
        need(g, "graph");
        need(path, "path");
        saveGraph(path, g->doc.graph, g->doc.cocycle);
    });
}

int mwg_graph_serialize(const mwg_graph* g, char** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        emit(out, serializeGraph(g->doc.graph, g->doc.cocycle));
    });
}

void mwg_graph_free(mwg_graph* g) { delete g; }

int mwg_graph_vertex_count(const mwg_graph* g, size_t* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = g->doc.graph.vertexCount();
    });
}

int mwg_graph_edge_count(const mwg_graph* g, size_t* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = g->doc.graph.edgeCount();
    });
}

int mwg_graph_is_periodic(const mwg_graph* g, int* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = g->doc.periodic() ? 1 : 0;
    });
}

int mwg_graph_with_weight_kind(const mwg_graph* g, const char* kind, mwg_graph** out) {
    return guarded([&] {
        need(g, "graph");
        need(kind, "kind");
        need(out, "out");
        *out = wrap({withWeightKind(g->doc.graph, parseWeightKind(kind)), g->doc.cocycle});
    });
}

int mwg_graph_with_flux(const mwg_graph* g, double t, mwg_graph** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = wrap({floquetGraph(g->doc.asPeriodic(), t), g->doc.cocycle});
    });
}

int mwg_spectrum(const mwg_graph* g, double* values, size_t capacity, size_t* count) {
    return guarded([&] {
        need(g, "graph");
        need(count, "count");
        auto s = spectrum(g->doc.graph);
        *count = s.size();
        if (!values) return;
        if (capacity < s.size()) fail(ErrorCode::IndexOutOfRange, "output buffer too small");
        std::copy(s.values.begin(), s.values.end(), values);
    });
}

int mwg_spectrum_csv(const mwg_graph* g, char** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        emit(out, spectrumCsv(spectrum(g->doc.graph)));
    });
}

int mwg_spectrum_json(const mwg_graph* g, char** out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        emit(out, dumpJson(spectrumJson(spectrum(g->doc.graph))));
    });
}

int mwg_compare(const mwg_graph* a, const mwg_graph* b, int r, double tol, int* holds, char** json) {
    return guarded([&] {
        need(a, "lhs");
        need(b, "rhs");
        auto sa = spectrum(a->doc.graph);
        auto sb = spectrum(b->doc.graph);
        auto rel = shiftLess(sa, sb, r, tol);
        if (holds) *holds = rel.holds ? 1 : 0;
        emit(json, dumpJson(shiftJson(rel, minimalShift(sa, sb, tol))));
    });
}

int mwg_perturb(const mwg_graph* g, const char* op, const char* target, const char* second,
                const char* weight_class, const char* branch, double tol, mwg_graph** out, char** certificate) {
    return guarded([&] {
        need(g, "graph");
        need(op, "operation");
        need(target, "target");
        const auto& w = g->doc.graph;
        const auto wc = weightClassArg(weight_class);
        CertifyOptions opt;
        opt.tol = tol;
        if (branch && *branch) opt.branch = branchArg(branch);
        const std::string o = op;
        PerturbationResult res = [&] {
            if (o == "delete-edge") return certifyDeleteEdge(w, w.edgeByName(target), wc, opt);
            if (o == "contract-edge") return certifyContractEdge(w, w.edgeByName(target), wc, opt);
            if (o == "contract-pendant") return certifyContractPendant(w, w.edgeByName(target), wc, opt);
            if (o == "delete-vertex") return certifyDeleteVertex(w, w.vertexByName(target), wc, opt);
            if (o == "contract-vertices") {
                need(second, "second vertex");
                return certifyContractVertices(w, w.vertexByName(target), w.vertexByName(second), wc, opt);
            }
            fail(ErrorCode::InvalidArgument, "unknown operation '" + o + "'");
        }();
        emit(certificate, dumpJson(certificateJson(res.certificate)));
        if (out) *out = wrap({res.graph, carryCocycle(g->doc, res.graph)});
    });
}

int mwg_minor(const mwg_graph* g, const char* script, const char* weight_class, double tol, mwg_graph** out,
              char** certificate) {
    return guarded([&] {
        need(g, "graph");
        need(script, "script");
        std::vector<MinorStep> steps;
        for (const auto& item : splitList(script)) {
            auto colon = item.find(':');
            if (colon == std::string::npos) fail(ErrorCode::InvalidStep, "step '" + item + "' lacks ':'");
            const auto kind = item.substr(0, colon);
            const auto name = item.substr(colon + 1);
            if (kind == "delete-edge") steps.push_back({MinorStepKind::DeleteEdge, name});
            else if (kind == "contract-edge") steps.push_back({MinorStepKind::ContractEdge, name});
            else if (kind == "delete-pendant") steps.push_back({MinorStepKind::DeletePendantVertex, name});
            else fail(ErrorCode::InvalidStep, "unknown step kind '" + kind + "'");
        }
        auto res = certifyMinor(g->doc.graph, steps, weightClassArg(weight_class), tol);
        emit(certificate, dumpJson(minorJson(res.certificate)));
        if (out) *out = wrap({res.graph, carryCocycle(g->doc, res.graph)});
    });
}

int mwg_hom_verify(const mwg_graph* source, const mwg_graph* target, const char* map_json, int* is_hom,
                   char** json) {
    return guarded([&] {
        need(source, "source");
        need(target, "target");
        need(map_json, "map");
        const auto& s = source->doc.graph;
        const auto& t = target->doc.graph;
        nlohmann::json m;
        try {
            m = nlohmann::json::parse(map_json);
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, std::string("malformed map: ") + e.what());
        }
        if (!m.is_object() || !m.contains("vertex_map") || !m.contains("edge_map"))
            fail(ErrorCode::ParseError, "map needs 'vertex_map' and 'edge_map' objects");
        std::vector<VertexId> vm(s.vertexCount());
        std::vector<bool> seenV(s.vertexCount(), false);
        std::vector<OrientedEdge> em(s.edgeCount());
        std::vector<bool> seenE(s.edgeCount(), false);
        try {
            for (auto& [k, v] : m["vertex_map"].items()) {
                auto src = s.vertexByName(k);
                vm[src.index] = t.vertexByName(v.get<std::string>());
                seenV[src.index] = true;
            }
            for (auto& [k, v] : m["edge_map"].items()) {
                auto src = s.edgeByName(k);
                auto name = v.get<std::string>();
                bool rev = !name.empty() && name[0] == '-';
                em[src.index] = {t.edgeByName(rev ? name.substr(1) : name), rev};
                seenE[src.index] = true;
            }
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::ParseError, std::string("bad map entry: ") + e.what());
        }
        for (bool b : seenV)
            if (!b) fail(ErrorCode::PartialMap, "vertex map does not cover the source");
        for (bool b : seenE)
            if (!b) fail(ErrorCode::PartialMap, "edge map does not cover the source");
        auto hom = verifyHom(s, t, vm, em);
        if (is_hom) *is_hom = hom.flags.isMWHom() ? 1 : 0;
        emit(json, dumpJson(homJson(hom, s, t)));
    });
}

int mwg_hom_search(const mwg_graph* source, const mwg_graph* target, int* found, char** json) {
    return guarded([&] {
        need(source, "source");
        need(target, "target");
        auto hom = searchHom(source->doc.graph, target->doc.graph);
        if (found) *found = hom ? 1 : 0;
        if (hom) {
            emit(json, dumpJson(homJson(*hom, source->doc.graph, target->doc.graph)));
        } else {
            Json j = Json::object();
            j["format_version"] = kFormatVersion;
            j["is_mw_hom"] = false;
            j["found"] = false;
            emit(json, dumpJson(j));
        }
    });
}

int mwg_frustration(const mwg_graph* g, const char* range, char** json) {
    return guarded([&] {
        need(g, "graph");
        FrustrationOptions opt;
        opt.range = rangeArg(range);
        emit(json, dumpJson(frustrationJson(frustrationIndex(g->doc.graph, opt), g->doc.graph)));
    });
}

int mwg_cheeger(const mwg_graph* g, int k, const char* range, char** json) {
    return guarded([&] {
        need(g, "graph");
        CheegerOptions opt;
        opt.frustration.range = rangeArg(range);
        emit(json, dumpJson(cheegerJson(cheegerConstant(g->doc.graph, k, opt), g->doc.graph)));
    });
}

int mwg_cheeger_inequality(const mwg_graph* g, int k, const char* range, int* holds, char** json) {
    return guarded([&] {
        need(g, "graph");
        CheegerOptions opt;
        opt.frustration.range = rangeArg(range);
        auto r = checkCheegerInequalities(g->doc.graph, k, opt);
        if (holds) *holds = r.holds ? 1 : 0;
        emit(json, dumpJson(cheegerInequalityJson(r)));
    });
}

int mwg_clique_bound(const mwg_graph* g, double tol, char** json) {
    return guarded([&] {
        need(g, "graph");
        auto b = cliqueMultiplicityBound(g->doc.graph, tol);
        emit(json, dumpJson(cliqueJson(b, cliqueNumber(g->doc.graph), static_cast<int>(g->doc.graph.edgeCount()))));
    });
}

int mwg_spanning_tree_count(const mwg_graph* g, double* out) {
    return guarded([&] {
        need(g, "graph");
        need(out, "out");
        *out = spanningTreeCount(g->doc.graph);
    });
}

int mwg_sweep_csv(const mwg_graph* g, int resolution, char** csv) {
    return guarded([&] {
        need(g, "graph");
        need(csv, "out");
        checkResolution(resolution);
        emit(csv, bandCsv(bandSweep(g->doc.asPeriodic(), resolution)));
    });
}

int mwg_bracket_virtualise(const mwg_graph* g, const char* edges, const char* vertices, int resolution, char** json) {
    return guarded([&] {
        need(g, "graph");
        checkResolution(resolution);
        const auto& w = g->doc.graph;
        std::vector<EdgeId> e0;
        for (const auto& n : splitList(edges)) e0.push_back(w.edgeByName(n));
        std::vector<VertexId> v0;
        for (const auto& n : splitList(vertices)) v0.push_back(w.vertexByName(n));
        BracketOptions opt;
        opt.sweepResolution = resolution;
        emit(json, dumpJson(bracketJson(bracketByVirtualisation(g->doc.asPeriodic(), e0, v0, opt))));
    });
}

int mwg_bracket_contract(const mwg_graph* g, const mwg_graph* split, const char* v1, const char* v2, int resolution,
                         char** json) {
    return guarded([&] {
        need(g, "graph");
        need(split, "split graph");
        need(v1, "v1");
        need(v2, "v2");
        checkResolution(resolution);
        const auto& s = split->doc.graph;
        BracketOptions opt;
        opt.sweepResolution = resolution;
        auto r = bracketByContraction(g->doc.asPeriodic(), split->doc.asPeriodic(), s.vertexByName(v1),
                                      s.vertexByName(v2), opt);
        emit(json, dumpJson(bracketJson(r)));
    });
}

int mwg_bracket_intersect(const char* const* reports, size_t count, char** json) {
    return guarded([&] {
        need(reports, "reports");
        std::vector<BracketReport> rs;
        for (size_t i = 0; i < count; ++i) {
            need(reports[i], "report");
            rs.push_back(parseBracketJson(reports[i]));
        }
        emit(json, dumpJson(bracketJson(intersectBrackets(rs))));
    });
}

int mwg_bracket_summary(const char* report, char** text) {
    return guarded([&] {
        need(report, "report");
        emit(text, gapSummary(parseBracketJson(report)));
    });
}

}  // extern "C"
