#include "mwg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mwg/error.hpp"

namespace mwg {

namespace {

using InJson = nlohmann::json;

[[noreturn]] void parseFail(const std::string& what) { fail(ErrorCode::ParseError, what); }

std::string idString(const InJson& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    parseFail(where + ": id must be a string or an integer");
}

double numberField(const InJson& obj, const char* key, const std::string& where) {
    const auto& v = obj.at(key);
    if (!v.is_number()) parseFail(where + ": '" + key + "' must be a number");
    return v.get<double>();
}

InJson parseJsonText(std::string_view text) {
    try {
        return InJson::parse(text.begin(), text.end());
    } catch (const InJson::parse_error& e) {
        parseFail(std::string("malformed JSON: ") + e.what());
    }
}

void checkVersion(const InJson& doc) {
    if (!doc.is_object()) parseFail("top level must be an object");
    if (doc.contains("format_version")) {
        const auto& v = doc["format_version"];
        if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
            parseFail("unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
    }
}

Json intervalJson(const Interval& i) {
    Json j = Json::object();
    j["lo"] = round15(std::abs(i.lo) < 1e-12 ? 0.0 : i.lo);
    j["hi"] = round15(std::abs(i.hi) < 1e-12 ? 0.0 : i.hi);
    if (i.empty) j["empty"] = true;
    return j;
}

Json partitionJson(const VertexPartition& p, const MWGraph& g) {
    Json out = Json::array();
    for (const auto& block : p.blocks) {
        Json b = Json::array();
        for (auto v : block) b.push_back(g.vertex(v).name);
        out.push_back(b);
    }
    return out;
}

}  // namespace

PeriodicGraph GraphDocument::asPeriodic() const {
    if (cocycle.empty()) fail(ErrorCode::InvalidArgument, "graph file carries no cocycle");
    return {graph, cocycle};
}

GraphDocument parseGraphDocument(std::string_view text) {
    const auto doc = parseJsonText(text);
    checkVersion(doc);
    try {
        if (!doc.contains("weight_kind") || !doc["weight_kind"].is_string()) parseFail("missing 'weight_kind'");
        WeightKind kind;
        try {
            kind = parseWeightKind(doc["weight_kind"].get<std::string>());
        } catch (const Error&) {
            parseFail("unknown weight_kind '" + doc["weight_kind"].get<std::string>() + "'");
        }
        if (!doc.contains("vertices") || !doc["vertices"].is_array()) parseFail("missing 'vertices' array");
        if (doc.contains("edges") && !doc["edges"].is_array()) parseFail("'edges' must be an array");

        std::vector<VertexSpec> vs;
        for (std::size_t i = 0; i < doc["vertices"].size(); ++i) {
            const auto& v = doc["vertices"][i];
            const std::string where = "vertex #" + std::to_string(i);
            if (!v.is_object() || !v.contains("id")) parseFail(where + ": needs an 'id'");
            VertexSpec s{idString(v["id"], where), std::nullopt};
            if (v.contains("weight")) s.weight = numberField(v, "weight", where);
            vs.push_back(std::move(s));
        }

        std::vector<EdgeSpec> es;
        std::vector<int> cocycle;
        bool anyCocycle = false;
        const InJson edges = doc.value("edges", InJson::array());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            const std::string where = "edge #" + std::to_string(i);
            if (!e.is_object() || !e.contains("src") || !e.contains("dst")) parseFail(where + ": needs 'src' and 'dst'");
            EdgeSpec s;
            s.name = e.contains("id") ? idString(e["id"], where) : "e" + std::to_string(i);
            s.tail = idString(e["src"], where);
            s.head = idString(e["dst"], where);
            if (e.contains("weight")) s.weight = numberField(e, "weight", where);
            if (e.contains("alpha")) s.alpha = numberField(e, "alpha", where);
            int c = 0;
            if (e.contains("cocycle")) {
                if (!e["cocycle"].is_number_integer()) parseFail(where + ": 'cocycle' must be an integer");
                c = e["cocycle"].get<int>();
                anyCocycle = true;
            }
            cocycle.push_back(c);
            es.push_back(std::move(s));
        }
        if (doc.contains("periodic") && doc["periodic"].is_boolean() && doc["periodic"].get<bool>()) anyCocycle = true;

        GraphDocument out{buildGraph(vs, es, kind), {}};
        if (anyCocycle) out.cocycle = std::move(cocycle);
        return out;
    } catch (const InJson::exception& e) {
        parseFail(std::string("bad graph document: ") + e.what());
    }
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GraphDocument loadGraphDocument(const std::string& path) { return parseGraphDocument(readTextFile(path)); }

MWGraph loadGraph(const std::string& path) { return loadGraphDocument(path).graph; }

std::string serializeGraph(const MWGraph& g, const std::vector<int>& cocycle) {
    if (!cocycle.empty() && cocycle.size() != g.edgeCount())
        fail(ErrorCode::InvalidArgument, "cocycle needs one value per edge");
    const bool custom = g.weightKind() == WeightKind::Custom;
    Json doc = Json::object();
    doc["format_version"] = kFormatVersion;
    doc["weight_kind"] = std::string(weightKindName(g.weightKind()));
    if (!cocycle.empty()) doc["periodic"] = true;
    Json vs = Json::array();
    for (const auto& v : g.vertices()) {
        Json j = Json::object();
        j["id"] = v.name;
        if (custom) j["weight"] = v.weight;
        vs.push_back(j);
    }
    Json es = Json::array();
    for (std::size_t i = 0; i < g.edgeCount(); ++i) {
        const auto& e = g.edges()[i];
        Json j = Json::object();
        j["id"] = e.name;
        j["src"] = g.vertex(e.tail).name;
        j["dst"] = g.vertex(e.head).name;
        if (custom) j["weight"] = e.weight;
        if (e.alpha != 0.0) j["alpha"] = e.alpha;
        if (!cocycle.empty() && cocycle[i] != 0) j["cocycle"] = cocycle[i];
        es.push_back(j);
    }
    doc["vertices"] = vs;
    doc["edges"] = es;
    return doc.dump(2) + "\n";
}

void saveGraph(const std::string& path, const MWGraph& g, const std::vector<int>& cocycle) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    out << serializeGraph(g, cocycle);
}

std::string formatNumber(double x) {
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string formatEigenvalue(double x) { return formatNumber(std::abs(x) < 1e-12 ? 0.0 : x); }

double round15(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(formatNumber(x));
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

std::string spectrumCsv(const Spectrum& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += formatEigenvalue(s[i]);
    }
    return out + "\n";
}

Json spectrumJson(const Spectrum& s) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    Json values = Json::array();
    for (double v : s.values) values.push_back(round15(std::abs(v) < 1e-12 ? 0.0 : v));
    j["values"] = values;
    Json groups = Json::array();
    for (auto [lambda, m] : s.grouped()) {
        Json g = Json::object();
        g["lambda"] = round15(std::abs(lambda) < 1e-12 ? 0.0 : lambda);
        g["multiplicity"] = m;
        groups.push_back(g);
    }
    j["groups"] = groups;
    j["tolerance"] = s.tolerance;
    return j;
}

Json shiftJson(const ShiftRelation& rel, int minimal) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    j["r"] = rel.r;
    j["holds"] = rel.holds;
    if (rel.witnessIndex) j["witness_index"] = *rel.witnessIndex;
    j["minimal_shift"] = minimal;
    j["tolerance"] = rel.tolerance;
    return j;
}

Json relationJson(const CertifiedRelation& rel) {
    Json j = Json::object();
    j["lhs"] = rel.lhs;
    j["rhs"] = rel.rhs;
    j["kind"] = rel.kind == RelationKind::Geometric ? "geometric" : "spectral";
    j["shift"] = rel.shift;
    j["minimal_shift"] = rel.minimalShift;
    j["result"] = rel.resultTag;
    j["verified"] = rel.numericallyVerified;
    j["tolerance"] = rel.tolerance;
    return j;
}

Json certificateJson(const PerturbationCertificate& cert) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    j["operation"] = std::string(operationName(cert.operation));
    j["parameters"] = cert.parameters;
    j["weight_class"] = std::string(weightClassName(cert.weightClass));
    if (!cert.branch.empty()) j["branch"] = cert.branch;
    if (cert.r) j["r"] = *cert.r;
    if (cert.s) j["s"] = *cert.s;
    Json rels = Json::array();
    for (const auto& r : cert.relations) rels.push_back(relationJson(r));
    j["relations"] = rels;
    return j;
}

Json minorJson(const MinorCertificate& cert) {
    Json j = certificateJson(cert.certificate);
    j["p"] = cert.p;
    j["q"] = cert.q;
    j["s"] = cert.s;
    j["bridges"] = cert.bridges;
    j["r"] = cert.r;
    Json steps = Json::array();
    for (const auto& s : cert.steps) steps.push_back(certificateJson(s));
    j["steps"] = steps;
    Json pers = Json::array();
    for (const auto& p : cert.persistent) {
        Json e = Json::object();
        e["lambda"] = round15(p.lambda);
        e["multiplicity"] = p.multiplicity;
        e["guaranteed"] = p.guaranteed;
        e["observed"] = p.observed;
        pers.push_back(e);
    }
    j["persistent"] = pers;
    return j;
}

Json homJson(const MWHom& hom, const MWGraph& source, const MWGraph& target) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    Json vm = Json::object();
    for (std::size_t v = 0; v < hom.vertexMap.size(); ++v)
        vm[source.vertices()[v].name] = target.vertex(hom.vertexMap[v]).name;
    j["vertex_map"] = vm;
    Json em = Json::object();
    for (std::size_t e = 0; e < hom.edgeMap.size(); ++e) {
        const auto& oe = hom.edgeMap[e];
        em[source.edges()[e].name] = (oe.reversed ? "-" : "") + target.edge(oe.edge).name;
    }
    j["edge_map"] = em;
    const auto& f = hom.flags;
    Json flags = Json::object();
    flags["is_graph_hom"] = f.isGraphHom;
    flags["preserves_potential"] = f.preservesPotential;
    flags["vertex_weight_ineq"] = f.vertexWeightIneq;
    flags["edge_weight_ineq"] = f.edgeWeightIneq;
    flags["vertex_measure_preserving"] = f.vertexMeasurePreserving;
    flags["edge_measure_preserving"] = f.edgeMeasurePreserving;
    if (f.degreeSumHolds) flags["degree_sum_holds"] = *f.degreeSumHolds;
    j["flags"] = flags;
    j["is_mw_hom"] = f.isMWHom();
    return j;
}

Json frustrationJson(const FrustrationResult& r, const MWGraph& g) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    j["iota"] = round15(std::abs(r.value) < 1e-12 ? 0.0 : r.value);
    j["method"] = std::string(frustrationMethodName(r.method));
    j["certified_exact"] = r.certifiedExact;
    Json tau = Json::object();
    for (std::size_t v = 0; v < r.minimizer.size(); ++v) tau[g.vertices()[v].name] = round15(r.minimizer[v]);
    j["minimizer"] = tau;
    return j;
}

Json cheegerJson(const CheegerResult& r, const MWGraph& g) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    j["k"] = r.k;
    j["h_k"] = round15(r.value);
    j["subpartition"] = partitionJson(r.subpartition, g);
    Json bv = Json::array();
    for (double v : r.blockValues) bv.push_back(round15(v));
    j["block_values"] = bv;
    j["certified"] = r.certified;
    j["frustration_method"] = std::string(frustrationMethodName(r.method));
    return j;
}

Json cheegerInequalityJson(const CheegerInequality& r) {
    Json j = Json::object();
    j["k"] = r.k;
    j["lambda_k"] = round15(r.lambda);
    j["h_k"] = round15(r.h);
    j["lower"] = round15(r.lower);
    j["upper"] = round15(r.upper);
    j["constant"] = round15(r.constant);
    j["holds"] = r.holds;
    return j;
}

Json cliqueJson(const std::optional<CliqueBound>& b, int cliqueNumber, int edges) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    j["clique_number"] = cliqueNumber;
    j["edges"] = edges;
    j["applies"] = b.has_value();
    if (b) {
        j["eigenvalue"] = b->d;
        j["multiplicity_lower_bound"] = b->multiplicityLowerBound;
        j["observed_multiplicity"] = b->observedMultiplicity;
    }
    return j;
}

Json bracketJson(const BracketReport& r) {
    Json j = Json::object();
    j["format_version"] = kFormatVersion;
    j["method"] = r.methods;
    j["range"] = Json::array({round15(r.rangeLo), round15(r.rangeHi)});
    Json iv = Json::array();
    for (const auto& i : r.intervals) iv.push_back(intervalJson(i));
    j["intervals"] = iv;
    Json un = Json::array();
    for (const auto& i : r.unionPieces) un.push_back(intervalJson(i));
    j["union"] = un;
    Json gaps = Json::array();
    for (const auto& i : r.gaps) gaps.push_back(intervalJson(i));
    j["gaps"] = gaps;
    return j;
}

BracketReport parseBracketJson(std::string_view text) {
    const auto doc = parseJsonText(text);
    checkVersion(doc);
    try {
        BracketReport r;
        if (!doc.contains("intervals") || !doc["intervals"].is_array()) parseFail("missing 'intervals' array");
        for (const auto& i : doc["intervals"]) {
            Interval iv;
            if (i.is_array() && i.size() == 2) {
                iv = {i[0].get<double>(), i[1].get<double>(), false};
            } else if (i.is_object()) {
                iv = {numberField(i, "lo", "interval"), numberField(i, "hi", "interval"), i.value("empty", false)};
            } else {
                parseFail("interval must be [lo, hi] or {lo, hi}");
            }
            if (!iv.empty && iv.lo > iv.hi) parseFail("interval with lo > hi");
            r.intervals.push_back(iv);
        }
        if (doc.contains("method")) {
            const auto& m = doc["method"];
            if (m.is_string()) r.methods.push_back(m.get<std::string>());
            else r.methods = m.get<std::vector<std::string>>();
        }
        if (doc.contains("range")) {
            r.rangeLo = doc["range"].at(0).get<double>();
            r.rangeHi = doc["range"].at(1).get<double>();
        } else if (!r.intervals.empty()) {
            r.rangeLo = 0.0;
            for (const auto& i : r.intervals) r.rangeHi = std::max(r.rangeHi, i.hi);
        }
        finaliseReport(r);
        return r;
    } catch (const InJson::exception& e) {
        parseFail(std::string("bad bracket document: ") + e.what());
    }
}

BracketReport loadBracket(const std::string& path) { return parseBracketJson(readTextFile(path)); }

std::string bandCsv(const BandSweep& sweep) {
    std::string out = "t";
    const std::size_t n = sweep.spectra.empty() ? 0 : sweep.spectra.front().size();
    for (std::size_t k = 1; k <= n; ++k) out += ",lambda_" + std::to_string(k);
    out += '\n';
    for (std::size_t j = 0; j < sweep.ts.size(); ++j) {
        out += formatNumber(sweep.ts[j]);
        for (double v : sweep.spectra[j].values) out += ',' + formatEigenvalue(v);
        out += '\n';
    }
    return out;
}

std::string gapSummary(const BracketReport& r) {
    std::string out;
    for (std::size_t k = 0; k < r.intervals.size(); ++k) {
        const auto& i = r.intervals[k];
        out += "J_" + std::to_string(k + 1) + " = ";
        out += i.empty ? "empty" : "[" + formatEigenvalue(i.lo) + ", " + formatEigenvalue(i.hi) + "]";
        out += '\n';
    }
    out += std::to_string(r.gaps.size()) + " gap(s)";
    out += r.gaps.empty() ? "\n" : ":\n";
    for (const auto& g : r.gaps) out += "  (" + formatEigenvalue(g.lo) + ", " + formatEigenvalue(g.hi) + ")\n";
    return out;
}

}  // namespace mwg
