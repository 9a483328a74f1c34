// Command-line front end. Talks to the library through the C API only.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mwg/mwg.h"

namespace {

struct Failure {
    int status;
};

void check(int status) {
    if (status != MWG_OK) throw Failure{status};
}

struct GraphDeleter {
    void operator()(mwg_graph* g) const { mwg_graph_free(g); }
};
using Graph = std::unique_ptr<mwg_graph, GraphDeleter>;

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { mwg_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

[[noreturn]] void usageError(const std::string& message) {
    std::cerr << "mwg: error INVALID_ARGUMENT (" << MWG_INVALID_ARGUMENT << "): " << message << "\n";
    throw Failure{-1};
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "mwg: error IO_ERROR (" << MWG_IO_ERROR << "): cannot open '" << path << "'\n";
        throw Failure{-1};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GraphArgs {
    std::string weights;
    std::optional<double> flux;
};

Graph load(const std::string& path, const GraphArgs& args) {
    mwg_graph* raw = nullptr;
    check(mwg_graph_load(path.c_str(), &raw));
    Graph g(raw);
    if (!args.weights.empty()) {
        check(mwg_graph_with_weight_kind(g.get(), args.weights.c_str(), &raw));
        g.reset(raw);
    }
    if (args.flux) {
        check(mwg_graph_with_flux(g.get(), *args.flux, &raw));
        g.reset(raw);
    }
    return g;
}

void addGraphOptions(CLI::App* cmd, GraphArgs& args) {
    cmd->add_option("--weights", args.weights, "Override the weight kind")
        ->check(CLI::IsMember({"combinatorial", "standard", "custom"}));
    cmd->add_option("--flux", args.flux, "Apply the cocycle with Floquet parameter t (radians)");
}

void print(const std::string& s) { std::cout << s << std::flush; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of magnetic weighted multigraphs.\n"
                 "Graph files are JSON documents (see README). Numbers print with 15 significant digits."};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    GraphArgs ga;
    std::string format = "csv";
    double tol = 1e-9;
    std::vector<std::string> files;
    std::string graphPath;
    std::string outPath;
    int resolution = 512;

    auto* spectrumCmd = app.add_subcommand("spectrum", "Eigenvalues of the magnetic Laplacian.\n"
                                                       "csv: one line lambda_1,...,lambda_n ascending.\n"
                                                       "json: values plus multiplicity groups.");
    spectrumCmd->add_option("graph", graphPath, "Graph file")->required()->check(CLI::ExistingFile);
    spectrumCmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    addGraphOptions(spectrumCmd, ga);

    int shift = 0;
    auto* compareCmd = app.add_subcommand("compare", "Test spectrum(A) <=_r spectrum(B); prints JSON.");
    compareCmd->add_option("graphs", files, "Graph files A and B")->required()->expected(2)->check(CLI::ExistingFile);
    compareCmd->add_option("--shift,-r", shift, "Shift r")->check(CLI::NonNegativeNumber);
    compareCmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
    addGraphOptions(compareCmd, ga);

    std::string op, target, second, wclass = "combinatorial", branch, script;
    auto* perturbCmd = app.add_subcommand(
        "perturb", "Apply a perturbation and print its certificate (JSON).\n"
                   "Operations: delete-edge EDGE, contract-vertices V1 V2, contract-edge EDGE,\n"
                   "contract-pendant EDGE, delete-vertex V, minor --script STEPS.\n"
                   "Exit status 2 if a certified relation fails numerically.");
    perturbCmd->add_option("operation", op, "Operation")
        ->required()
        ->check(CLI::IsMember({"delete-edge", "contract-vertices", "contract-edge", "contract-pendant", "delete-vertex",
                               "minor"}));
    perturbCmd->add_option("graph", graphPath, "Graph file")->required()->check(CLI::ExistingFile);
    perturbCmd->add_option("target", target, "Edge or vertex name");
    perturbCmd->add_option("second", second, "Second vertex for contract-vertices");
    perturbCmd->add_option("--class", wclass, "Weight class")
        ->check(CLI::IsMember({"combinatorial", "standard", "general"}));
    perturbCmd->add_option("--branch", branch, "General-weight edge deletion branch")
        ->check(CLI::IsMember({"A1", "A2", "B", "C"}));
    perturbCmd->add_option("--script", script,
                           "Minor steps: delete-edge:E,contract-edge:E,delete-pendant:V (comma separated)");
    perturbCmd->add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
    perturbCmd->add_option("--output,-o", outPath, "Write the perturbed graph here");
    addGraphOptions(perturbCmd, ga);

    std::string mapPath;
    auto* homCmd = app.add_subcommand("hom", "MW-homomorphisms between two graphs (JSON).");
    homCmd->require_subcommand(1);
    auto* homVerify = homCmd->add_subcommand("verify", "Check an explicit map");
    homVerify->add_option("graphs", files, "Source and target")->required()->expected(2)->check(CLI::ExistingFile);
    homVerify->add_option("--map", mapPath, "JSON {vertex_map, edge_map}")->required()->check(CLI::ExistingFile);
    auto* homSearch = homCmd->add_subcommand("search", "Exhaustive search (source up to 10 vertices)");
    homSearch->add_option("graphs", files, "Source and target")->required()->expected(2)->check(CLI::ExistingFile);

    int k = 1;
    std::string range = "auto";
    bool inequality = false;
    auto* cheegerCmd = app.add_subcommand("cheeger", "k-way Cheeger constant: {k, h_k, subpartition, certified, "
                                                     "frustration_method}.");
    cheegerCmd->add_option("graph", graphPath, "Graph file")->required()->check(CLI::ExistingFile);
    cheegerCmd->add_option("-k", k, "Number of blocks")->check(CLI::PositiveNumber);
    cheegerCmd->add_option("--range", range, "auto, signed or circle")
        ->check(CLI::IsMember({"auto", "signed", "circle"}));
    cheegerCmd->add_flag("--inequality", inequality, "Check lambda_k/2 <= h_k <= C k^3 sqrt(rho lambda_k) (k = 1, 2)");
    addGraphOptions(cheegerCmd, ga);

    auto* frustCmd = app.add_subcommand("frustration", "Frustration index (JSON).");
    frustCmd->add_option("graph", graphPath, "Graph file")->required()->check(CLI::ExistingFile);
    frustCmd->add_option("--range", range, "auto, signed or circle")->check(CLI::IsMember({"auto", "signed", "circle"}));
    addGraphOptions(frustCmd, ga);

    double cliqueTol = 1e-8;
    auto* cliqueCmd = app.add_subcommand("clique-bound", "Multiplicity of eigenvalue d forced by a d-clique (JSON).");
    cliqueCmd->add_option("graph", graphPath, "Graph file")->required()->check(CLI::ExistingFile);
    cliqueCmd->add_option("--tol", cliqueTol, "Eigenvalue tolerance")->check(CLI::PositiveNumber);
    addGraphOptions(cliqueCmd, ga);

    auto* sweepCmd = app.add_subcommand("sweep", "Band CSV: header t,lambda_1..lambda_n; one row per\n"
                                                 "t_j = 2*pi*j/(resolution-1).");
    sweepCmd->add_option("graph", graphPath, "Periodic graph file")->required()->check(CLI::ExistingFile);
    sweepCmd->add_option("--resolution,-n", resolution, "Number of samples")->check(CLI::Range(2, 1000000));
    addGraphOptions(sweepCmd, ga);

    std::string edges, vertices, v1, v2;
    std::vector<std::string> intersectFiles;
    std::string bracketFormat = "json";
    auto* bracketCmd = app.add_subcommand("bracket", "Spectral brackets of a periodic graph.\n"
                                                     "json: {format_version, method, range, intervals, union, gaps}.\n"
                                                     "text: interval table and gap list.");
    bracketCmd->require_subcommand(0, 1);
    bracketCmd->add_option("--intersect", intersectFiles, "Intersect saved bracket JSON files")
        ->check(CLI::ExistingFile);
    bracketCmd->add_option("--format", bracketFormat, "json or text")->check(CLI::IsMember({"json", "text"}));
    auto* bVirt = bracketCmd->add_subcommand("virtualise", "J_k = [lambda_k(W-), lambda_k(W+)]");
    bVirt->add_option("graph", graphPath, "Periodic graph file")->required()->check(CLI::ExistingFile);
    bVirt->add_option("--edges", edges, "Edges to virtualise (comma separated)");
    bVirt->add_option("--vertices", vertices, "Vertices to virtualise (comma separated)");
    bVirt->add_option("--resolution,-n", resolution, "Sweep samples for the containment check")
        ->check(CLI::Range(2, 1000000));
    auto* bContr = bracketCmd->add_subcommand("contract", "J'_k = [lambda_k(T), lambda_k+1(T)] for a split graph T");
    bContr->add_option("graphs", files, "Periodic graph and split graph")->required()->expected(2)->check(
        CLI::ExistingFile);
    bContr->add_option("--v1", v1, "First split vertex")->required();
    bContr->add_option("--v2", v2, "Second split vertex")->required();
    bContr->add_option("--resolution,-n", resolution, "Sweep samples for the containment check")
        ->check(CLI::Range(2, 1000000));
    auto* bInter = bracketCmd->add_subcommand("intersect", "Intersect saved bracket JSON files");
    bInter->add_option("reports", intersectFiles, "Bracket JSON files")->required()->check(CLI::ExistingFile);

    auto* treesCmd = app.add_subcommand("trees", "Number of spanning trees (combinatorial, zero potential).");
    treesCmd->add_option("graph", graphPath, "Graph file")->required()->check(CLI::ExistingFile);
    addGraphOptions(treesCmd, ga);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mwg: error INVALID_ARGUMENT (" << MWG_INVALID_ARGUMENT << "): " << e.what() << "\n";
        return 1;
    }

    try {
        OwnedString out;
        if (spectrumCmd->parsed()) {
            auto g = load(graphPath, ga);
            check(format == "json" ? mwg_spectrum_json(g.get(), &out.p) : mwg_spectrum_csv(g.get(), &out.p));
            print(out.str());
        } else if (compareCmd->parsed()) {
            auto a = load(files[0], ga);
            auto b = load(files[1], ga);
            int holds = 0;
            check(mwg_compare(a.get(), b.get(), shift, tol, &holds, &out.p));
            print(out.str());
        } else if (perturbCmd->parsed()) {
            auto g = load(graphPath, ga);
            mwg_graph* raw = nullptr;
            if (op == "minor") {
                if (script.empty()) usageError("minor needs --script");
                check(mwg_minor(g.get(), script.c_str(), wclass.c_str(), tol, &raw, &out.p));
            } else {
                if (target.empty()) usageError(op + " needs a target");
                if (op == "contract-vertices" && second.empty()) usageError("contract-vertices needs two vertices");
                check(mwg_perturb(g.get(), op.c_str(), target.c_str(), second.empty() ? nullptr : second.c_str(),
                                  wclass.c_str(), branch.empty() ? nullptr : branch.c_str(), tol, &raw, &out.p));
            }
            Graph result(raw);
            if (!outPath.empty()) check(mwg_graph_save(result.get(), outPath.c_str()));
            print(out.str());
        } else if (homVerify->parsed()) {
            auto s = load(files[0], {});
            auto t = load(files[1], {});
            int isHom = 0;
            check(mwg_hom_verify(s.get(), t.get(), readFile(mapPath).c_str(), &isHom, &out.p));
            print(out.str());
        } else if (homSearch->parsed()) {
            auto s = load(files[0], {});
            auto t = load(files[1], {});
            int found = 0;
            check(mwg_hom_search(s.get(), t.get(), &found, &out.p));
            print(out.str());
        } else if (cheegerCmd->parsed()) {
            auto g = load(graphPath, ga);
            int holds = 0;
            check(inequality ? mwg_cheeger_inequality(g.get(), k, range.c_str(), &holds, &out.p)
                             : mwg_cheeger(g.get(), k, range.c_str(), &out.p));
            print(out.str());
        } else if (frustCmd->parsed()) {
            auto g = load(graphPath, ga);
            check(mwg_frustration(g.get(), range.c_str(), &out.p));
            print(out.str());
        } else if (cliqueCmd->parsed()) {
            auto g = load(graphPath, ga);
            check(mwg_clique_bound(g.get(), cliqueTol, &out.p));
            print(out.str());
        } else if (sweepCmd->parsed()) {
            auto g = load(graphPath, ga);
            check(mwg_sweep_csv(g.get(), resolution, &out.p));
            print(out.str());
        } else if (bracketCmd->parsed()) {
            if (bVirt->parsed()) {
                auto g = load(graphPath, {});
                check(mwg_bracket_virtualise(g.get(), edges.c_str(), vertices.c_str(), resolution, &out.p));
            } else if (bContr->parsed()) {
                auto g = load(files[0], {});
                auto split = load(files[1], {});
                check(mwg_bracket_contract(g.get(), split.get(), v1.c_str(), v2.c_str(), resolution, &out.p));
            } else {
                if (intersectFiles.empty()) usageError("bracket needs virtualise, contract or --intersect FILES");
                std::vector<std::string> texts;
                for (const auto& f : intersectFiles) texts.push_back(readFile(f));
                std::vector<const char*> ptrs;
                for (const auto& t : texts) ptrs.push_back(t.c_str());
                check(mwg_bracket_intersect(ptrs.data(), ptrs.size(), &out.p));
            }
            if (bracketFormat == "text") {
                OwnedString text;
                check(mwg_bracket_summary(out.p, &text.p));
                print(text.str());
            } else {
                print(out.str());
            }
        } else if (treesCmd->parsed()) {
            auto g = load(graphPath, ga);
            double count = 0;
            check(mwg_spanning_tree_count(g.get(), &count));
            std::printf("%.15g\n", std::round(count));
        }
    } catch (const Failure& f) {
        if (f.status < 0) return 1;
        std::cerr << "mwg: error " << mwg_status_name(f.status) << " (" << f.status << "): " << mwg_last_error()
                  << "\n";
        return f.status == MWG_CERTIFICATE_VIOLATION || f.status == MWG_BRACKET_VIOLATION ? 2 : 1;
    }
    return 0;
}
