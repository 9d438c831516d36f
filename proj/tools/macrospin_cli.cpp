// Command-line front door: irrep decompositions, Wigner matrices,
// commutator scans, compatibility graphs, theorem verification, witness
// queries, and Fine-criterion feasibility checks. Emits CSV/DOT/JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "macrospin/macrospin.hpp"

namespace ms = macrospin;
using nlohmann::json;

namespace {

// shortest round-trip decimal representation
std::string fmt_double(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct BetaGrid {
    double start = 0.0, end = 0.0;
    long long count = 0;

    static BetaGrid parse(const std::string& s)
    {
        BetaGrid g;
        std::size_t a = s.find(':');
        std::size_t b = s.rfind(':');
        if (a == std::string::npos || a == b)
            throw CLI::ValidationError("--beta-grid", "expected start:end:count");
        try {
            g.start = std::stod(s.substr(0, a));
            g.end = std::stod(s.substr(a + 1, b - a - 1));
            g.count = std::stoll(s.substr(b + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--beta-grid", "expected start:end:count");
        }
        if (g.count < 1) throw CLI::ValidationError("--beta-grid", "count must be >= 1");
        return g;
    }

    std::vector<double> points() const
    {
        std::vector<double> out;
        for (long long i = 0; i < count; ++i) {
            double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out.push_back(start + t * (end - start));
        }
        return out;
    }
};

// temp file + rename; "-" or empty means stdout
void atomic_write(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

json provenance(const std::string& subcommand, const json& config)
{
    return json{{"tool", "macrospin"},
                {"version", ms::kVersion},
                {"subcommand", subcommand},
                {"config", config}};
}

std::string provenance_comment(const std::string& subcommand, const json& config)
{
    return "# macrospin " + std::string(ms::kVersion) + " " + subcommand + " "
           + config.dump() + "\n";
}

std::vector<ms::Direction> load_directions(const std::string& path,
                                           const std::vector<std::string>& inline_dirs)
{
    std::vector<ms::Direction> dirs;
    auto push = [&](double x, double y, double z) {
        double norm = std::sqrt(x * x + y * y + z * z);
        if (std::abs(norm - 1.0) > 1e-6)
            throw std::invalid_argument("direction not unit length: "
                                        + fmt_double(x) + " " + fmt_double(y) + " "
                                        + fmt_double(z));
        dirs.emplace_back(x / norm, y / norm, z / norm);
    };
    for (const auto& s : inline_dirs) {
        std::string t = s;
        for (char& c : t)
            if (c == ',') c = ' ';
        std::istringstream is(t);
        double x, y, z;
        if (!(is >> x >> y >> z))
            throw std::invalid_argument("bad inline direction \"" + s + "\"");
        push(x, y, z);
    }
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot read directions file " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::istringstream is(line);
            double x, y, z;
            if (!(is >> x >> y >> z))
                throw std::invalid_argument("bad direction line \"" + line + "\"");
            push(x, y, z);
        }
    }
    if (dirs.empty()) throw std::invalid_argument("no directions given");
    return dirs;
}

std::string dot_node_id(std::size_t direction_index, ms::HalfInt m)
{
    return "d" + std::to_string(direction_index) + "_m" + m.str();
}

int cmd_decompose(long long n, const std::string& spin, const std::string& format,
                  const std::string& out)
{
    ms::HalfInt s = ms::HalfInt::parse(spin);
    ms::MultiplicityTable table = ms::multiplicities(n, s);
    json config{{"n", n}, {"spin", s.str()}, {"format", format}};
    ms::BigInt expected = boost::multiprecision::pow(
        ms::BigInt(s.twice() + 1), static_cast<unsigned>(n));

    if (format == "csv") {
        std::string body = provenance_comment("decompose", config);
        body += "j,multiplicity\n";
        for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it)
            body += it->first.str() + "," + it->second.str() + "\n";
        atomic_write(out, body);
        return 0;
    }
    json doc;
    doc["provenance"] = provenance("decompose", config);
    json mult = json::object();
    for (const auto& [j, lambda] : table.entries) {
        if (lambda <= std::numeric_limits<std::uint64_t>::max())
            mult[j.str()] = static_cast<std::uint64_t>(lambda);
        else
            mult[j.str()] = lambda.str();
    }
    doc["multiplicities"] = mult;
    doc["dimension_check"] = {{"sum", table.total_dimension().str()},
                              {"expected", expected.str()},
                              {"ok", table.total_dimension() == expected}};
    atomic_write(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_wigner(const std::string& jstr, double beta, const std::string& row,
               const std::string& col, const std::string& format, const std::string& out)
{
    ms::HalfInt j = ms::HalfInt::parse(jstr);
    json config{{"j", j.str()}, {"beta", beta}, {"format", format}};
    if (!row.empty() || !col.empty()) {
        if (row.empty() || col.empty())
            throw std::invalid_argument("--row and --col must be given together");
        ms::HalfInt mr = ms::HalfInt::parse(row);
        ms::HalfInt mc = ms::HalfInt::parse(col);
        config["row"] = mr.str();
        config["col"] = mc.str();
        double v = ms::wigner_d_element(j, mr, mc, beta);
        json doc{{"provenance", provenance("wigner", config)}, {"value", v}};
        atomic_write(out, doc.dump(2) + "\n");
        return 0;
    }
    ms::RealMatrix d = ms::wigner_d_matrix(j, beta);
    if (format == "csv") {
        std::string body = provenance_comment("wigner", config);
        for (Eigen::Index r = 0; r < d.rows(); ++r) {
            for (Eigen::Index c = 0; c < d.cols(); ++c) {
                if (c) body += ",";
                body += fmt_double(d(r, c));
            }
            body += "\n";
        }
        atomic_write(out, body);
        return 0;
    }
    json mat = json::array();
    for (Eigen::Index r = 0; r < d.rows(); ++r) {
        json rowv = json::array();
        for (Eigen::Index c = 0; c < d.cols(); ++c) rowv.push_back(d(r, c));
        mat.push_back(rowv);
    }
    json doc{{"provenance", provenance("wigner", config)}, {"matrix", mat}};
    atomic_write(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_commutator_scan(long long n, const std::string& spin, const std::string& mstr,
                        const std::string& mpstr, const std::string& grid_spec,
                        const std::string& format, const std::string& out)
{
    ms::HalfInt s = ms::HalfInt::parse(spin);
    ms::HalfInt m = ms::HalfInt::parse(mstr);
    ms::HalfInt mp = ms::HalfInt::parse(mpstr);
    BetaGrid grid = BetaGrid::parse(grid_spec);
    ms::EnsembleSpec spec(n, s);
    if (!spec.valid_outcome(m) || !spec.valid_outcome(mp))
        throw std::domain_error("outcome labels invalid for this ensemble");

    auto betas = grid.points();
    std::vector<double> norms(betas.size());
    ms::parallel_for(betas.size(), [&](std::size_t i) {
        norms[i] = ms::commutator_norm(spec, m, mp, betas[i]);
    });

    json config{{"n", n},          {"spin", s.str()},       {"m", m.str()},
                {"mprime", mp.str()}, {"beta_grid", grid_spec}, {"format", format}};
    if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < betas.size(); ++i)
            rows.push_back({{"beta", betas[i]}, {"frobenius_norm", norms[i]}});
        json doc{{"provenance", provenance("commutator-scan", config)}, {"rows", rows}};
        atomic_write(out, doc.dump(2) + "\n");
        return 0;
    }
    std::string body = provenance_comment("commutator-scan", config);
    body += "beta,frobenius_norm\n";
    for (std::size_t i = 0; i < betas.size(); ++i)
        body += fmt_double(betas[i]) + "," + fmt_double(norms[i]) + "\n";
    atomic_write(out, body);
    return 0;
}

int cmd_context_graph(long long n, const std::string& spin, const std::string& dir_file,
                      const std::vector<std::string>& inline_dirs, double tol, bool tol_set,
                      const std::string& format, const std::string& out)
{
    ms::HalfInt s = ms::HalfInt::parse(spin);
    ms::EnsembleSpec spec(n, s);
    auto dirs = load_directions(dir_file, inline_dirs);
    double edge_tol = tol_set ? tol : ms::default_edge_tolerance(spec);
    ms::CompatibilityGraph graph = ms::compatibility_graph(spec, dirs, edge_tol);
    auto contexts = ms::find_contexts(graph);

    json dir_json = json::array();
    for (const auto& d : dirs) dir_json.push_back({d.x, d.y, d.z});
    json config{{"n", n},       {"spin", s.str()}, {"directions", dir_json},
                {"tol", edge_tol}, {"format", format}};

    if (format == "dot") {
        std::string body = provenance_comment("context-graph", config);
        body += "graph compatibility {\n";
        for (const auto& node : graph.nodes)
            body += "  \"" + dot_node_id(node.direction_index, node.outcome) + "\";\n";
        for (const auto& [u, v] : graph.edges)
            body += "  \"" + dot_node_id(graph.nodes[u].direction_index, graph.nodes[u].outcome)
                    + "\" -- \""
                    + dot_node_id(graph.nodes[v].direction_index, graph.nodes[v].outcome)
                    + "\";\n";
        body += "}\n";
        atomic_write(out, body);
        return 0;
    }
    json doc;
    doc["provenance"] = provenance("context-graph", config);
    json nodes = json::array();
    for (const auto& node : graph.nodes)
        nodes.push_back({{"id", dot_node_id(node.direction_index, node.outcome)},
                         {"direction", node.direction_index},
                         {"outcome", node.outcome.str()}});
    doc["nodes"] = nodes;
    json edges = json::array();
    for (const auto& [u, v] : graph.edges) edges.push_back({u, v});
    doc["edges"] = edges;
    json ctx = json::array();
    for (const auto& t : contexts) ctx.push_back({t.a, t.b, t.c});
    doc["contexts"] = ctx;
    atomic_write(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_verify_theorem(long long n, const std::string& spin, const std::string& grid_spec,
                       double tol, const std::string& format, const std::string& out)
{
    ms::HalfInt s = ms::HalfInt::parse(spin);
    ms::EnsembleSpec spec(n, s);
    BetaGrid grid = BetaGrid::parse(grid_spec);
    auto betas = grid.points();
    auto outcomes = spec.outcomes();

    constexpr double kEndpointZero = 1e-12;
    std::vector<double> min_norm(betas.size());
    std::vector<double> max_norm(betas.size());
    ms::parallel_for(betas.size(), [&](std::size_t i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (ms::HalfInt m : outcomes) {
            for (ms::HalfInt mp : outcomes) {
                double norm = ms::commutator_norm(spec, m, mp, betas[i]);
                lo = std::min(lo, norm);
                hi = std::max(hi, norm);
            }
        }
        min_norm[i] = lo;
        max_norm[i] = hi;
    });

    bool pass = true;
    for (std::size_t i = 0; i < betas.size(); ++i) {
        bool endpoint = std::abs(betas[i]) < 1e-12 || std::abs(betas[i] - M_PI) < 1e-12;
        if (endpoint) {
            if (max_norm[i] > kEndpointZero) pass = false;
        } else {
            if (min_norm[i] <= tol) pass = false;
        }
    }

    json config{{"n", n}, {"spin", s.str()}, {"beta_grid", grid_spec},
                {"tol", tol}, {"format", format}};
    if (format == "csv") {
        std::string body = provenance_comment("verify-theorem", config);
        body += "beta,min_norm,max_norm\n";
        for (std::size_t i = 0; i < betas.size(); ++i)
            body += fmt_double(betas[i]) + "," + fmt_double(min_norm[i]) + ","
                    + fmt_double(max_norm[i]) + "\n";
        body += std::string("# verdict=") + (pass ? "PASS" : "FAIL") + "\n";
        atomic_write(out, body);
        return 0;
    }
    json rows = json::array();
    for (std::size_t i = 0; i < betas.size(); ++i)
        rows.push_back({{"beta", betas[i]},
                        {"min_norm", min_norm[i]},
                        {"max_norm", max_norm[i]}});
    json doc{{"provenance", provenance("verify-theorem", config)},
             {"rows", rows},
             {"verdict", pass ? "PASS" : "FAIL"}};
    atomic_write(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_witness(const std::string& mstr, const std::string& nstr, double beta,
                const std::string& jmax_str, const std::string& out)
{
    ms::HalfInt m = ms::HalfInt::parse(mstr);
    ms::HalfInt nval = ms::HalfInt::parse(nstr);
    ms::HalfInt jmax = ms::HalfInt::parse(jmax_str);
    if ((m.twice() - nval.twice()) % 2 != 0)
        throw std::domain_error("m and outcome-n must have the same parity");
    if (beta <= 0.0 || beta >= M_PI)
        throw std::domain_error("beta must lie strictly inside (0, pi)");

    // available total-j values share the parity of the outcome labels
    std::vector<ms::HalfInt> j_values;
    long long start2 = (m.twice() % 2 == 0) ? 0 : 1;
    for (long long j2 = start2; j2 <= jmax.twice(); j2 += 2)
        j_values.push_back(ms::HalfInt::from_twice(j2));
    if (j_values.empty()) throw std::domain_error("no j values up to jmax");

    auto found = ms::witness(m, nval, beta, j_values);
    json config{{"m", m.str()}, {"outcome_n", nval.str()}, {"beta", beta},
                {"jmax", jmax.str()}};
    json doc;
    doc["provenance"] = provenance("witness", config);
    if (found) {
        doc["j"] = found->j.str();
        doc["k"] = found->k.str();
    } else {
        doc["result"] = "none";
    }
    atomic_write(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_feasibility(const std::string& scenario_path, double tol, const std::string& out)
{
    std::ifstream in(scenario_path);
    if (!in) throw std::invalid_argument("cannot read scenario file " + scenario_path);
    json raw = json::parse(in);
    ms::ContextScenario sc = ms::scenario_from_json(raw);
    ms::FeasibilityResult res = ms::joint_feasibility(sc, tol);
    bool verified = res.feasible ? ms::verify_feasible_certificate(sc, res)
                                 : ms::verify_infeasible_certificate(sc, res);

    json config{{"scenario", scenario_path}, {"tol", tol}};
    json doc = ms::feasibility_to_json(sc, res);
    doc["provenance"] = provenance("feasibility", config);
    doc["certificate_verified"] = verified;
    atomic_write(out, doc.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"macrospin: magnetization observables, commutator structure, and "
                 "contextuality for collective spin ensembles"};
    app.require_subcommand(1);

    long long n = 1;
    std::string spin = "1/2", m = "0", mprime = "0", outcome_n = "0";
    std::string jstr = "1", row, col, jmax = "5";
    std::string grid_spec = "0:3.141592653589793:25";
    std::string format, out, dir_file, scenario_path;
    std::vector<std::string> inline_dirs;
    double beta = 0.0, tol = 0.0;

    auto* decompose = app.add_subcommand("decompose", "irrep multiplicities of N spin-s particles");
    decompose->add_option("--n", n, "particle count")->required();
    decompose->add_option("--spin", spin, "single-particle spin (integer or p/2)")->required();
    decompose->add_option("--format", format, "json|csv")->default_val("json");
    decompose->add_option("--out", out, "output path (default stdout)");

    auto* wigner = app.add_subcommand("wigner", "Wigner d-matrix or a single element");
    wigner->add_option("--j", jstr, "total spin j")->required();
    wigner->add_option("--beta", beta, "rotation angle in radians")->required();
    wigner->add_option("--row", row, "row label m'");
    wigner->add_option("--col", col, "column label m");
    wigner->add_option("--format", format, "json|csv")->default_val("json");
    wigner->add_option("--out", out, "output path (default stdout)");

    auto* scan = app.add_subcommand("commutator-scan",
                                    "Frobenius norm of [P_m(z), P_m'(n_beta)] over a beta grid");
    scan->add_option("--n", n, "particle count")->required();
    scan->add_option("--spin", spin, "single-particle spin")->required();
    scan->add_option("--m", m, "first outcome label")->required();
    scan->add_option("--mprime", mprime, "second outcome label")->required();
    scan->add_option("--beta-grid", grid_spec, "start:end:count")->required();
    scan->add_option("--format", format, "csv|json")->default_val("csv");
    scan->add_option("--out", out, "output path (default stdout)");

    auto* graph = app.add_subcommand("context-graph",
                                     "compatibility graph over (direction, outcome) projectors");
    graph->add_option("--n", n, "particle count")->required();
    graph->add_option("--spin", spin, "single-particle spin")->required();
    graph->add_option("--directions", dir_file, "file with one unit vector per line");
    graph->add_option("--direction", inline_dirs, "inline direction x,y,z (repeatable)");
    auto* tol_opt = graph->add_option("--tol", tol, "edge tolerance on commutator norm");
    graph->add_option("--format", format, "dot|json")->default_val("dot");
    graph->add_option("--out", out, "output path (default stdout)");

    auto* verify = app.add_subcommand("verify-theorem",
                                      "scan all (m, m') pairs over a beta grid; PASS iff zero "
                                      "at endpoints and nonzero inside");
    verify->add_option("--n", n, "particle count")->required();
    verify->add_option("--spin", spin, "single-particle spin")->required();
    verify->add_option("--beta-grid", grid_spec, "start:end:count")->required();
    verify->add_option("--tol", tol, "nonzero threshold inside (0, pi)")->default_val(1e-8);
    verify->add_option("--format", format, "json|csv")->default_val("json");
    verify->add_option("--out", out, "output path (default stdout)");

    auto* wit = app.add_subcommand("witness", "constructive noncommutation witness (j, k)");
    wit->add_option("--m", m, "outcome label m")->required();
    wit->add_option("--outcome-n", outcome_n, "outcome label n")->required();
    wit->add_option("--beta", beta, "angle in (0, pi)")->required();
    wit->add_option("--jmax", jmax, "largest available total j")->required();
    wit->add_option("--out", out, "output path (default stdout)");

    auto* feas = app.add_subcommand("feasibility", "Fine-criterion joint-distribution check");
    feas->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    feas->add_option("--tol", tol, "marginal matching tolerance")->default_val(1e-9);
    feas->add_option("--out", out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*decompose) return cmd_decompose(n, spin, format, out);
        if (*wigner) return cmd_wigner(jstr, beta, row, col, format, out);
        if (*scan) return cmd_commutator_scan(n, spin, m, mprime, grid_spec, format, out);
        if (*graph)
            return cmd_context_graph(n, spin, dir_file, inline_dirs, tol,
                                     tol_opt->count() > 0, format, out);
        if (*verify) return cmd_verify_theorem(n, spin, grid_spec, tol, format, out);
        if (*wit) return cmd_witness(m, outcome_n, beta, jmax, out);
        if (*feas) return cmd_feasibility(scenario_path, tol, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
