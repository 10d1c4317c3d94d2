#include "drg/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace drg;

// exit codes: 0 = completed with verdicts, 2 = usage or input error,
// 3 = internal invariant violation
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Output {
    std::string format = "text";
    std::string path;

    void emit(const Json& report) const {
        std::string body = render(report, parse_format(format));
        if (path.empty()) {
            std::cout << body;
        } else {
            std::ofstream f(path, std::ios::trunc);
            if (!f) throw std::invalid_argument("cannot write " + path);
            f << body;
        }
    }
};

void add_output_flags(CLI::App* cmd, Output& out) {
    cmd->add_option("--format", out.format, "output format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    cmd->add_option("--out", out.path, "write the report to a file instead of stdout");
}

Graph graph_from_spec(const std::string& gen, const std::string& file) {
    if (!gen.empty() && !file.empty())
        throw std::invalid_argument("give either --gen or --file, not both");
    if (!file.empty()) return load_edge_list_file(file);
    if (gen.empty()) throw std::invalid_argument("a graph is required: --gen or --file");
    std::string name = gen;
    std::vector<int> args;
    auto colon = gen.find(':');
    if (colon != std::string::npos) {
        name = gen.substr(0, colon);
        std::string rest = gen.substr(colon + 1);
        std::istringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) args.push_back(std::stoi(tok));
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k)
            throw std::invalid_argument("generator " + name + " needs " + std::to_string(k) +
                                        " argument(s)");
    };
    if (name == "cycle") { want(1); return cycle(args[0]); }
    if (name == "path") { want(1); return path_graph(args[0]); }
    if (name == "hypercube") { want(1); return hypercube(args[0]); }
    if (name == "folded-hypercube") { want(1); return folded_hypercube(args[0]); }
    if (name == "hamming") { want(2); return hamming(args[0], args[1]); }
    if (name == "johnson") { want(2); return johnson(args[0], args[1]); }
    if (name == "grassmann") { want(3); return grassmann_q(args[0], args[1], args[2]); }
    if (name == "petersen") { want(0); return petersen(); }
    throw std::invalid_argument("unknown generator: " + name +
                                " (try cycle:n, path:n, hypercube:d, folded-hypercube:m, "
                                "hamming:d,n, johnson:n,d, grassmann:n,d,q, petersen)");
}

int run(int argc, char** argv) {
    CLI::App app{"drgwb: exact feasibility, Terwilliger-module, and uniform-structure workbench "
                 "for distance-regular graphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value configuration file");

    // params
    auto* cmd_params = app.add_subcommand("params", "analyze classical parameters (D, q, alpha, beta)");
    int D = 0;
    std::string q_str, alpha_str = "0", beta_str = "0";
    Output params_out;
    cmd_params->add_option("-D", D, "diameter")->required();
    cmd_params->add_option("-q", q_str, "q (integer, not 0 or -1)")->required();
    cmd_params->add_option("--alpha", alpha_str, "alpha (rational)")->required();
    cmd_params->add_option("--beta", beta_str, "beta (rational)")->required();
    add_output_flags(cmd_params, params_out);

    // feasibility
    auto* cmd_feas = app.add_subcommand("feasibility", "run the elimination chains with certificates");
    int family = 0, fD = 0;
    std::string fq_str, falpha_str, fbeta_str;
    Output feas_out;
    cmd_feas->add_option("--family", family, "parameter family: 1 (alpha=q+1) or 2 (alpha=q)")
        ->check(CLI::IsMember({1, 2}));
    cmd_feas->add_option("-q", fq_str, "q >= 2")->required();
    cmd_feas->add_option("-D", fD, "diameter >= 4")->required();
    cmd_feas->add_option("--alpha", falpha_str, "explicit alpha (rational; runs the generic screen)");
    cmd_feas->add_option("--beta", fbeta_str, "explicit beta (rational; runs the generic screen)");
    add_output_flags(cmd_feas, feas_out);

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "exact k_D / f_D integrality sweep over the D = 0 (mod 6) grid");
    long q_max = 0;
    int d_max = 0, jobs = 1;
    std::string checkpoint_dir, records_path;
    Output sweep_out;
    cmd_sweep->add_option("--q-max", q_max, "largest q")->required();
    cmd_sweep->add_option("--d-max", d_max, "largest D")->required();
    cmd_sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    cmd_sweep->add_option("--checkpoint-dir", checkpoint_dir, "resumable cell store")
        ->envname("DRGWB_CHECKPOINT_DIR");
    cmd_sweep->add_option("--records", records_path, "write the sorted cell records (TSV) here");
    add_output_flags(cmd_sweep, sweep_out);

    // graph
    auto* cmd_graph = app.add_subcommand("graph", "load or generate a graph and detect distance-regularity");
    std::string g_gen, g_file;
    bool full_check = false;
    Output graph_out;
    cmd_graph->add_option("--gen", g_gen, "generator spec, e.g. hypercube:4");
    cmd_graph->add_option("--file", g_file, "edge list file");
    cmd_graph->add_flag("--full-check", full_check, "verify every p^h_ij by brute count");
    add_output_flags(cmd_graph, graph_out);

    // modules
    auto* cmd_modules = app.add_subcommand("modules", "decompose the standard module into T-modules");
    std::string m_gen, m_file, m_mode = "full";
    int m_x = 0;
    Output modules_out;
    cmd_modules->add_option("--gen", m_gen, "generator spec");
    cmd_modules->add_option("--file", m_file, "edge list file");
    cmd_modules->add_option("-x", m_x, "base vertex")->capture_default_str();
    cmd_modules->add_option("--mode", m_mode, "algebra mode: full or tf")
        ->check(CLI::IsMember({"full", "tf"}))
        ->capture_default_str();
    add_output_flags(cmd_modules, modules_out);

    // uniform
    auto* cmd_uniform = app.add_subcommand("uniform", "decide the uniform structure with respect to a base vertex");
    std::string u_gen, u_file;
    int u_x = 0;
    Output uniform_out;
    cmd_uniform->add_option("--gen", u_gen, "generator spec");
    cmd_uniform->add_option("--file", u_file, "edge list file");
    cmd_uniform->add_option("-x", u_x, "base vertex")->capture_default_str();
    add_output_flags(cmd_uniform, uniform_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage; // --help and --version exit 0
    }

    if (cmd_params->parsed()) {
        ClassicalParams cp(D, Int(q_str), parse_rat(alpha_str), parse_rat(beta_str));
        params_out.emit(params_report(cp));
        return kExitOk;
    }

    if (cmd_feas->parsed()) {
        Int q(fq_str);
        FeasibilityReport rep;
        if (!falpha_str.empty() || !fbeta_str.empty()) {
            if (falpha_str.empty() || fbeta_str.empty())
                throw std::invalid_argument("explicit parameters need both --alpha and --beta");
            rep = integrality_screen(ClassicalParams(fD, q, parse_rat(falpha_str), parse_rat(fbeta_str)));
        } else if (family == 1) {
            rep = family1_eliminate(q, fD);
        } else if (family == 2) {
            rep = family2_eliminate(q, fD); // DNotCovered propagates to exit 2
        } else {
            throw std::invalid_argument("choose --family 1|2 or give explicit --alpha/--beta");
        }
        feas_out.emit(feasibility_report(rep));
        return kExitOk;
    }

    if (cmd_sweep->parsed()) {
        SweepResult res = conjecture_sweep(q_max, d_max, jobs, checkpoint_dir);
        if (!records_path.empty()) {
            std::ofstream f(records_path, std::ios::trunc);
            if (!f) throw std::invalid_argument("cannot write " + records_path);
            f << sweep_records(res);
        }
        sweep_out.emit(sweep_report(res));
        return kExitOk;
    }

    if (cmd_graph->parsed()) {
        Graph g = graph_from_spec(g_gen, g_file);
        graph_out.emit(graph_report(g, is_distance_regular(g, full_check)));
        return kExitOk;
    }

    if (cmd_modules->parsed()) {
        Graph g = graph_from_spec(m_gen, m_file);
        TMode mode = (m_mode == "tf") ? TMode::bipartite_quotient : TMode::full;
        if (m_x < 0 || m_x >= g.n()) throw std::invalid_argument("base vertex out of range");
        auto ctx = build_context(g, m_x, mode);
        modules_out.emit(modules_report(ctx, decompose(ctx)));
        return kExitOk;
    }

    if (cmd_uniform->parsed()) {
        Graph g = graph_from_spec(u_gen, u_file);
        if (u_x < 0 || u_x >= g.n()) throw std::invalid_argument("base vertex out of range");
        if (g.is_bipartite()) {
            auto ctx = build_context(g, u_x, TMode::full);
            uniform_out.emit(uniform_report(ctx, solve_uniform(ctx)));
        } else {
            auto verdict = supports_uniform(g, u_x);
            auto ctx = build_context(g, u_x, TMode::bipartite_quotient);
            uniform_out.emit(uniform_report(ctx, verdict));
        }
        return kExitOk;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const drg::internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
