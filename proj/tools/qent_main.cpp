// Command line front end: separability verdicts, the correlation measure,
// factorization, graph-state utilities and canned result reproductions.

#include "qent/experiments.hpp"
#include "qent/factor.hpp"
#include "qent/graph.hpp"
#include "qent/measures.hpp"
#include "qent/separability.hpp"
#include "qent/state_io.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace qent;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

std::string fmt(cdouble z) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.10g%+.10gi", z.real(), z.imag());
    return buf;
}

std::string field_text(const ordered_json& v) {
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Flat reports print as "key: value" lines, one CSV row, or a JSON object.
void emit_report(const ordered_json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::string header, row;
        for (auto it = report.begin(); it != report.end(); ++it) {
            if (!header.empty()) {
                header += ',';
                row += ',';
            }
            header += it.key();
            row += field_text(it.value());
        }
        std::cout << header << "\n" << row << "\n";
        return;
    }
    for (auto it = report.begin(); it != report.end(); ++it)
        std::cout << it.key() << ": " << field_text(it.value()) << "\n";
}

// Rows share a fixed column set; text gets an aligned table, csv a header.
void emit_rows(const std::vector<std::string>& cols, const std::vector<ordered_json>& rows,
               const std::string& format) {
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(r);
        std::cout << arr.dump(2) << "\n";
        return;
    }
    std::string sep = (format == "csv") ? "," : "  ";
    std::string header;
    for (const auto& c : cols) header += (header.empty() ? "" : sep) + c;
    std::cout << header << "\n";
    for (const auto& r : rows) {
        std::string line;
        for (const auto& c : cols) line += (line.empty() ? "" : sep) + field_text(r.at(c));
        std::cout << line << "\n";
    }
}

std::vector<std::vector<int>> parse_groups(const std::string& text) {
    std::vector<std::vector<int>> groups;
    std::stringstream blocks(text);
    std::string block;
    while (std::getline(blocks, block, '|')) {
        std::vector<int> g;
        std::stringstream items(block);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                size_t pos = 0;
                int v = std::stoi(item, &pos);
                if (pos != item.size()) throw std::invalid_argument(item);
                g.push_back(v);
            } catch (const std::exception&) {
                throw ParseError("bad partition entry '" + item + "' in '" + text + "'");
            }
        }
        if (g.empty()) throw ParseError("empty partition block in '" + text + "'");
        groups.push_back(g);
    }
    if (groups.size() < 2) throw ParseError("partition needs at least two '|'-separated blocks");
    return groups;
}

PartitionSpec parse_cut(const std::string& text, int subsystems) {
    if (text.empty()) {
        // Default cut: first subsystem against the rest.
        PartitionSpec p;
        p.s = {1};
        for (int k = 2; k <= subsystems; ++k) p.t.push_back(k);
        return p;
    }
    auto groups = parse_groups(text);
    if (groups.size() != 2) throw ParseError("this criterion needs a two-block partition");
    return PartitionSpec{groups[0], groups[1]};
}

std::string partition_text(const PartitionSpec& p) {
    std::string out;
    for (size_t i = 0; i < p.s.size(); ++i) out += (i ? "," : "") + std::to_string(p.s[i]);
    out += "|";
    for (size_t i = 0; i < p.t.size(); ++i) out += (i ? "," : "") + std::to_string(p.t[i]);
    return out;
}

ordered_json verdict_report(const Verdict& v) {
    ordered_json j;
    j["status"] = to_string(v.status);
    j["witness"] = v.witnessValue;
    j["bound"] = v.bound;
    if (v.partition) j["partition"] = partition_text(*v.partition);
    return j;
}

WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return graph_from_json(buf.str());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Vec qudit_ghz(int N, int d) {
    Dims dims(N, d);
    Vec psi = Vec::Zero(total_dim(dims));
    long stride = 0;
    for (int k = 0; k < N; ++k) stride = stride * d + 1;
    for (int k = 0; k < d; ++k) psi(k * stride) = 1.0 / std::sqrt(double(d));
    return psi;
}

// 1/2 (|112> + |123> + |214> + |234>) with 1-based digits in C2 x C3 x C4.
Vec mixed_dims_state() {
    Dims dims{2, 3, 4};
    Vec psi = 0.5 * (basis_state(dims, {0, 0, 1}) + basis_state(dims, {0, 1, 2}) +
                     basis_state(dims, {1, 0, 3}) + basis_state(dims, {1, 2, 3}));
    return psi;
}

ordered_json threshold_row(const std::string& family, int n, const Vec& psi, const Dims& dims) {
    auto witness = [&](double p) {
        return kyfan_test(noisy_state(psi, p, dims), dims).witnessValue;
    };
    ThresholdScan scan = threshold_bisect(family, witness, kyfan_bound(dims));
    ordered_json row;
    row["family"] = family;
    row["n"] = n;
    row["pstar"] = scan.pStar;
    row["bound"] = scan.bound;
    row["outcome"] = scan.outcome;
    return row;
}

int run_separability(const std::string& stateSpec, const std::string& criterion,
                     const std::string& partitionStr, double tol, const std::string& format) {
    StateFile st = resolve_state(stateSpec);
    Mat rho = st.density();
    int m = static_cast<int>(st.dims.size());

    ordered_json report;
    report["criterion"] = criterion;
    if (criterion == "kyfan") {
        Verdict v = partitionStr.empty()
                        ? kyfan_test(rho, st.dims)
                        : kyfan_test_partition(rho, st.dims, parse_groups(partitionStr));
        report.update(verdict_report(v));
    } else if (criterion == "ppt") {
        Verdict v = ppt_test(rho, st.dims, parse_cut(partitionStr, m));
        report.update(verdict_report(v));
    } else if (criterion == "sufficient") {
        Verdict v = sufficiency_test(rho, st.dims);
        report.update(verdict_report(v));
    } else {  // degree
        PartitionSpec cut = parse_cut(partitionStr, m);
        WeightedGraph g = graph_from_density(rho, st.dims);
        WeightedGraph gpt = graph_partial_transpose(g, st.dims, cut);
        auto before = degrees(g);
        auto after = degrees(gpt);
        double dev = 0.0;
        for (int v = 0; v < g.n; ++v) dev = std::max(dev, std::abs(before[v] - after[v]));
        bool holds = dev <= tol;
        report["status"] = holds ? "Inconclusive" : "Entangled";
        report["witness"] = dev;
        report["bound"] = 0.0;
        report["partition"] = partition_text(cut);
        report["degrees_preserved"] = holds ? "yes" : "no";
    }
    emit_report(report, format);
    return 0;
}

int run_measure(const std::string& stateSpec, bool normalize, const std::string& format) {
    StateFile st = resolve_state(stateSpec);
    if (!st.pure) throw DomainError("measure needs a pure state");
    MeasureResult r = e_t(st.amplitudes, normalize);

    ordered_json report;
    report["tensor_norm"] = r.tensorNorm;
    report["e_t"] = r.eT;
    report["eps_t"] = r.epsT;
    if (r.normalizedByGhz) report["e_t_normalized"] = *r.normalizedByGhz;
    emit_report(report, format);
    return 0;
}

int run_factorize(const std::string& stateSpec, const std::string& format) {
    StateFile st = resolve_state(stateSpec);
    if (!st.pure) throw DomainError("factorize needs a pure state");
    FactorTree tree = full_factorize(st.amplitudes, st.dims);
    auto leaves = tree.leaves();

    if (format == "json") {
        ordered_json out;
        out["factor_count"] = leaves.size();
        ordered_json arr = ordered_json::array();
        for (const auto* leaf : leaves) {
            ordered_json f;
            f["subsystems"] = leaf->subsystems;
            ordered_json dims = ordered_json::array();
            for (int k : leaf->subsystems) dims.push_back(st.dims[k - 1]);
            f["dims"] = dims;
            ordered_json amps = ordered_json::array();
            for (long i = 0; i < leaf->state.size(); ++i)
                amps.push_back({leaf->state(i).real(), leaf->state(i).imag()});
            f["amplitudes"] = amps;
            arr.push_back(f);
        }
        out["factors"] = arr;
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "factor_count: " << leaves.size() << "\n";
    for (const auto* leaf : leaves) {
        std::string subs;
        for (size_t i = 0; i < leaf->subsystems.size(); ++i)
            subs += (i ? " " : "") + std::to_string(leaf->subsystems[i]);
        std::cout << "(" << subs << "):";
        for (long i = 0; i < leaf->state.size(); ++i) std::cout << " " << fmt(leaf->state(i));
        std::cout << "\n";
    }
    return 0;
}

int run_graph(const std::string& graphPath, const std::string& action, const std::string& cutStr,
              double tol, const std::string& format) {
    WeightedGraph g = load_graph_file(graphPath);

    if (action == "to-density") {
        Mat rho = density_from_graph(g);
        StateFile st;
        st.pure = false;
        st.dims = g.dims;
        st.matrix = rho;
        if (format == "json" || format == "csv") {
            std::cout << state_to_json(st) << "\n";
        } else {
            for (long r = 0; r < rho.rows(); ++r) {
                for (long c = 0; c < rho.cols(); ++c) std::cout << (c ? " " : "") << fmt(rho(r, c));
                std::cout << "\n";
            }
        }
        return 0;
    }
    if (action == "check-psd") {
        PsdScreen screen = psd_screen(g);
        ordered_json report;
        report["screen"] = screen == PsdScreen::PSD       ? "psd"
                           : screen == PsdScreen::NotPSD ? "not-psd"
                                                         : "unknown";
        if (screen == PsdScreen::Unknown) {
            auto evals = hermitian_eigenvalues(laplacian(g));
            report["min_eigenvalue"] = evals.front();
            report["definitive"] = evals.front() >= -tol ? "psd" : "not-psd";
        }
        emit_report(report, format);
        return 0;
    }
    if (action == "purity") {
        double dsq = 0.0, esq = 0.0, dsum = 0.0;
        for (int v = 0; v < g.n; ++v) {
            double d = vertex_degree(g, v);
            dsum += d;
            dsq += d * d;
        }
        for (const auto& [e, w] : g.edges) esq += std::norm(w);
        ordered_json report;
        report["pure"] = is_pure_graph(g) ? "yes" : "no";
        if (dsum != 0.0) report["purity"] = (dsq + 2.0 * esq) / (dsum * dsum);
        emit_report(report, format);
        return 0;
    }
    if (action == "entropy") {
        ordered_json report;
        report["entropy"] = von_neumann_entropy(g);
        emit_report(report, format);
        return 0;
    }
    // pt
    PartitionSpec cut = parse_cut(cutStr, static_cast<int>(g.dims.size()));
    WeightedGraph gpt = graph_partial_transpose(g, g.dims, cut);
    bool preserved = degree_criterion(g, g.dims, cut);
    if (format == "json") {
        ordered_json report;
        report["partition"] = partition_text(cut);
        report["degrees_preserved"] = preserved ? "yes" : "no";
        report["graph"] = nlohmann::ordered_json::parse(graph_to_json(gpt));
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "partition: " << partition_text(cut) << "\n";
        std::cout << "degrees_preserved: " << (preserved ? "yes" : "no") << "\n";
        std::cout << graph_to_json(gpt) << "\n";
    }
    return 0;
}

int run_reproduce(const std::string& which, int n, const std::string& target,
                  const std::string& format) {
    const std::vector<std::string> thresholdCols{"family", "n", "pstar", "bound", "outcome"};

    if (which == "thresholds") {
        std::vector<ordered_json> rows;
        for (int N = 3; N <= 6; ++N)
            rows.push_back(threshold_row("ghz", N, ghz_state(N), Dims(N, 2)));
        for (int N = 3; N <= 6; ++N) rows.push_back(threshold_row("w", N, w_state(N), Dims(N, 2)));
        emit_rows(thresholdCols, rows, format);
        return 0;
    }
    if (which == "qutrit-thresholds") {
        std::vector<ordered_json> rows;
        for (int N = 3; N <= 4; ++N)
            rows.push_back(threshold_row("qutrit-ghz", N, qudit_ghz(N, 3), Dims(N, 3)));
        emit_rows(thresholdCols, rows, format);
        return 0;
    }
    if (which == "mixed-dims-threshold") {
        std::vector<ordered_json> rows;
        rows.push_back(threshold_row("mixed-234", 3, mixed_dims_state(), {2, 3, 4}));
        emit_rows(thresholdCols, rows, format);
        return 0;
    }
    if (which == "smolin") {
        Dims dims{2, 2, 2, 2};
        Mat rho = smolin_state();
        ordered_json report = verdict_report(kyfan_test(rho, dims));
        const std::vector<std::vector<int>> cuts{{1, 2}, {1, 3}, {1, 4}};
        for (const auto& s : cuts) {
            std::vector<int> t;
            for (int k = 1; k <= 4; ++k)
                if (std::find(s.begin(), s.end(), k) == s.end()) t.push_back(k);
            PartitionSpec cut{s, t};
            Verdict v = ppt_test(rho, dims, cut);
            report["ppt_" + partition_text(cut)] =
                std::string(to_string(v.status)) + " (min_eig " + fmt(-v.witnessValue) + ")";
        }
        emit_report(report, format);
        return 0;
    }
    if (which == "dur") {
        emit_report(verdict_report(kyfan_test(dur_state(), {2, 2, 2, 2})), format);
        return 0;
    }
    if (which == "grover") {
        int N = n > 0 ? n : 6;
        std::string bits = target.empty() ? std::string(N, '0') : target;
        auto trace = grover_trace(N, bits);
        std::vector<std::pair<double, double>> rows;
        for (const auto& pt : trace) rows.push_back({double(pt.iteration), pt.eT});
        std::cout << scan_emit(rows);
        return 0;
    }
    if (which == "heisenberg") {
        int N = n > 0 ? n : 20;
        std::vector<std::pair<double, double>> rows;
        for (int s = 0; s <= N; ++s) rows.push_back({double(s), heisenberg_et(N, s)});
        std::cout << scan_emit(rows);
        return 0;
    }
    if (which == "wghz") {
        std::vector<std::pair<double, double>> rows;
        for (int i = 0; i <= 100; ++i) {
            double s = i / 100.0;
            rows.push_back({s, wghz_superposition_et(s)});
        }
        std::cout << scan_emit(rows);
        return 0;
    }
    // ghzscan
    int N = n > 0 ? n : 3;
    std::vector<std::pair<double, double>> rows;
    for (int i = 0; i <= 100; ++i) {
        double p = i / 100.0;
        rows.push_back({p, ghz_family_et(p, N)});
    }
    std::cout << scan_emit(rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement detection and measurement toolkit"};
    app.require_subcommand(1);

    std::string stateSpec, format = "text";
    double tolerance = 1e-10;
    app.add_option("--state", stateSpec, "state file path or builtin:<name>");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--tolerance", tolerance, "numeric tolerance for structural checks");

    auto* sep = app.add_subcommand("separability", "run an entanglement criterion");
    sep->fallthrough();
    std::string criterion = "kyfan", partitionStr;
    sep->add_option("--criterion", criterion, "criterion to apply")
        ->check(CLI::IsMember({"kyfan", "degree", "ppt", "sufficient"}));
    sep->add_option("--partition", partitionStr, "subsystem partition, e.g. 1,2|3");

    auto* meas = app.add_subcommand("measure", "correlation-tensor measure of a pure state");
    meas->fallthrough();
    bool normalize = false;
    meas->add_flag("--normalize", normalize, "also report the value relative to the GHZ state");

    auto* fact = app.add_subcommand("factorize", "split a pure state into tensor factors");
    fact->fallthrough();

    auto* graph = app.add_subcommand("graph", "weighted-graph state utilities");
    graph->fallthrough();
    std::string graphPath, action, cutStr;
    graph->add_option("--graph", graphPath, "graph JSON file")->required();
    graph->add_option("--action", action, "what to compute")
        ->required()
        ->check(CLI::IsMember({"to-density", "check-psd", "purity", "entropy", "pt"}));
    graph->add_option("--cut", cutStr, "two-block partition for pt, e.g. 1|2");

    auto* rep = app.add_subcommand("reproduce", "recompute published reference results");
    rep->fallthrough();
    std::string which;
    int repN = 0;
    std::string target;
    rep->add_option("which", which, "result set to reproduce")
        ->required()
        ->check(CLI::IsMember({"thresholds", "qutrit-thresholds", "mixed-dims-threshold", "smolin",
                               "dur", "grover", "heisenberg", "wghz", "ghzscan"}));
    rep->add_option("--n", repN, "system size where applicable");
    rep->add_option("--target", target, "target bitstring for grover");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sep->parsed()) {
            if (stateSpec.empty()) throw ParseError("--state is required");
            return run_separability(stateSpec, criterion, partitionStr, tolerance, format);
        }
        if (meas->parsed()) {
            if (stateSpec.empty()) throw ParseError("--state is required");
            return run_measure(stateSpec, normalize, format);
        }
        if (fact->parsed()) {
            if (stateSpec.empty()) throw ParseError("--state is required");
            return run_factorize(stateSpec, format);
        }
        if (graph->parsed()) return run_graph(graphPath, action, cutStr, tolerance, format);
        if (rep->parsed()) return run_reproduce(which, repN, target, format);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
