#include "qent/graph.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace qent {

namespace {

constexpr double kEdgeEps = 1e-12;

void check_vertex(const WeightedGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("vertex index out of range");
}

void check_same_shape(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.kind != b.kind) throw std::invalid_argument("graph kinds differ");
}

// Rebuilds a graph whose Laplacian equals q under the kind's convention.
WeightedGraph graph_from_laplacian(const Mat& q, GraphKind kind, const Dims& dims) {
    WeightedGraph g(kind, dims);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            cdouble w = kind == GraphKind::Real ? cdouble(-q(u, v).real(), 0.0) : q(u, v);
            if (std::abs(w) > kEdgeEps) g.edges[{u, v}] = w;
        }
    for (int v = 0; v < g.n; ++v) {
        double incident = 0.0;
        for (const auto& [e, w] : g.edges) {
            if (e.first != v && e.second != v) continue;
            incident += kind == GraphKind::Real ? w.real() : std::abs(w);
        }
        double loop = q(v, v).real() - incident;
        g.loops[v] = std::abs(loop) > kEdgeEps ? loop : 0.0;
    }
    return g;
}

// Same rebuild but from an adjacency matrix: loops are its diagonal.
WeightedGraph graph_from_adjacency(const Mat& m, GraphKind kind, const Dims& dims) {
    WeightedGraph g(kind, dims);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            cdouble w = kind == GraphKind::Real ? cdouble(m(u, v).real(), 0.0) : m(u, v);
            if (std::abs(w) > kEdgeEps) g.edges[{u, v}] = w;
        }
    for (int v = 0; v < g.n; ++v) {
        double loop = m(v, v).real();
        g.loops[v] = std::abs(loop) > kEdgeEps ? loop : 0.0;
    }
    return g;
}

Mat diag_of(const std::vector<double>& d) {
    Mat m = Mat::Zero(d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

void set_edge(WeightedGraph& g, int u, int v, cdouble w) {
    check_vertex(g, u);
    check_vertex(g, v);
    if (u == v) throw std::invalid_argument("use loops for diagonal weights");
    if (g.kind == GraphKind::Real && std::abs(w.imag()) > kEdgeEps)
        throw std::invalid_argument("real graph edge weight must be real");
    if (u > v) {
        std::swap(u, v);
        w = std::conj(w);
    }
    if (std::abs(w) <= kEdgeEps)
        g.edges.erase({u, v});
    else
        g.edges[{u, v}] = g.kind == GraphKind::Real ? cdouble(w.real(), 0.0) : w;
}

cdouble edge_weight(const WeightedGraph& g, int u, int v) {
    check_vertex(g, u);
    check_vertex(g, v);
    bool flip = u > v;
    if (flip) std::swap(u, v);
    auto it = g.edges.find({u, v});
    if (it == g.edges.end()) return 0.0;
    return flip ? std::conj(it->second) : it->second;
}

double vertex_degree(const WeightedGraph& g, int v) {
    check_vertex(g, v);
    double d = g.loops[v];
    for (const auto& [e, w] : g.edges) {
        if (e.first != v && e.second != v) continue;
        d += g.kind == GraphKind::Real ? w.real() : std::abs(w);
    }
    return d;
}

std::vector<double> degrees(const WeightedGraph& g) {
    std::vector<double> d(g.loops.begin(), g.loops.end());
    for (const auto& [e, w] : g.edges) {
        double x = g.kind == GraphKind::Real ? w.real() : std::abs(w);
        d[e.first] += x;
        d[e.second] += x;
    }
    return d;
}

double degree_sum(const WeightedGraph& g) {
    auto d = degrees(g);
    double s = 0.0;
    for (double x : d) s += x;
    return s;
}

Mat adjacency_matrix(const WeightedGraph& g) {
    Mat m = Mat::Zero(g.n, g.n);
    for (const auto& [e, w] : g.edges) {
        m(e.first, e.second) = w;
        m(e.second, e.first) = std::conj(w);
    }
    for (int v = 0; v < g.n; ++v) m(v, v) = g.loops[v];
    return m;
}

Mat laplacian(const WeightedGraph& g) {
    Mat m = adjacency_matrix(g);
    Mat d = diag_of(degrees(g));
    Mat d0 = diag_of(g.loops);
    return g.kind == GraphKind::Real ? Mat(d - m + d0) : Mat(d + m - d0);
}

Mat density_from_graph(const WeightedGraph& g) {
    Mat q = laplacian(g);
    double dsum = degree_sum(g);
    if (std::abs(dsum) <= kEdgeEps) throw std::invalid_argument("zero degree sum");
    if (!is_psd(q, 1e-9)) throw std::invalid_argument("Laplacian not positive semidefinite");
    return q / dsum;
}

WeightedGraph graph_from_density(const Mat& rho, const Dims& dims) {
    long d = total_dim(dims);
    if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("matrix size does not match dims");
    if (!is_hermitian(rho, 1e-8)) throw std::invalid_argument("density matrix not Hermitian");
    GraphKind kind = rho.imag().cwiseAbs().maxCoeff() > kEdgeEps ? GraphKind::Complex : GraphKind::Real;
    return graph_from_laplacian(rho, kind, dims);
}

bool is_pure_graph(const WeightedGraph& g) {
    if (!is_psd(laplacian(g), 1e-9)) throw std::invalid_argument("Laplacian not positive semidefinite");
    auto d = degrees(g);
    double lhs = 0.0;
    for (double x : d) lhs += x * x;
    for (const auto& [e, w] : g.edges) lhs += 2.0 * std::norm(w);
    double rhs = degree_sum(g);
    rhs *= rhs;
    return std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs);
}

std::vector<std::pair<double, Vec>> projector_decomposition(const WeightedGraph& g) {
    std::vector<std::pair<double, Vec>> out;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& [e, w] : g.edges) {
        Vec v = Vec::Zero(g.n);
        if (g.kind == GraphKind::Real) {
            v(e.first) = inv_sqrt2;
            v(e.second) = -inv_sqrt2;
            out.emplace_back(2.0 * w.real(), v);
        } else {
            double phi = M_PI - std::arg(w);
            v(e.first) = inv_sqrt2;
            v(e.second) = -std::polar(1.0, phi) * inv_sqrt2;
            out.emplace_back(2.0 * std::abs(w), v);
        }
    }
    for (int t = 0; t < g.n; ++t) {
        if (g.loops[t] == 0.0) continue;
        Vec v = Vec::Zero(g.n);
        v(t) = 1.0;
        out.emplace_back(g.loops[t], v);
    }
    return out;
}

WeightedGraph convex_combine(const std::vector<WeightedGraph>& graphs,
                             const std::vector<double>& weights) {
    if (graphs.empty() || graphs.size() != weights.size())
        throw std::invalid_argument("need matching nonempty graph and weight lists");
    double wsum = 0.0;
    for (double p : weights) wsum += p;
    if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("weights must sum to 1");
    for (const auto& g : graphs) {
        check_same_shape(graphs.front(), g);
        if (g.n != graphs.front().n) throw std::invalid_argument("vertex counts differ");
    }

    WeightedGraph out(graphs.front().kind, graphs.front().dims);
    std::vector<double> target(out.n, 0.0);
    std::map<std::pair<int, int>, cdouble> merged;
    for (size_t i = 0; i < graphs.size(); ++i) {
        double ds = degree_sum(graphs[i]);
        if (std::abs(ds) <= kEdgeEps) throw std::invalid_argument("component graph has zero degree sum");
        double c = weights[i] / ds;
        for (const auto& [e, w] : graphs[i].edges) merged[e] += c * w;
        auto d = degrees(graphs[i]);
        for (int v = 0; v < out.n; ++v) target[v] += c * d[v];
        if (out.kind == GraphKind::Real)
            for (int v = 0; v < out.n; ++v) out.loops[v] += c * graphs[i].loops[v];
    }
    for (const auto& [e, w] : merged)
        if (std::abs(w) > kEdgeEps) out.edges[e] = w;
    if (out.kind == GraphKind::Complex) {
        // Loops absorb whatever the merged edges leave of the target degrees.
        for (int v = 0; v < out.n; ++v) {
            double incident = 0.0;
            for (const auto& [e, w] : out.edges)
                if (e.first == v || e.second == v) incident += std::abs(w);
            double loop = target[v] - incident;
            out.loops[v] = std::abs(loop) > kEdgeEps ? loop : 0.0;
        }
    } else {
        for (int v = 0; v < out.n; ++v)
            if (std::abs(out.loops[v]) <= kEdgeEps) out.loops[v] = 0.0;
    }
    return out;
}

WeightedGraph trace_out(const WeightedGraph& g, const Dims& dims, int part) {
    if (total_dim(dims) != g.n) throw std::invalid_argument("dims do not match vertex count");
    int m = static_cast<int>(dims.size());
    if (m < 2 || part < 1 || part > m) throw std::invalid_argument("bad subsystem index");
    std::vector<int> keep;
    Dims rdims;
    for (int k = 1; k <= m; ++k)
        if (k != part) {
            keep.push_back(k);
            rdims.push_back(dims[k - 1]);
        }
    Mat qr = partial_trace(laplacian(g), dims, keep);
    return graph_from_laplacian(qr, g.kind, rdims);
}

double von_neumann_entropy(const WeightedGraph& g) {
    Mat sigma = density_from_graph(g);
    double s = 0.0;
    for (double lam : hermitian_eigenvalues(sigma))
        if (lam > 1e-12) s -= lam * std::log2(lam);
    return s;
}

WeightedGraph graph_op(const WeightedGraph& g, GraphOpKind which) {
    WeightedGraph out(g.kind, g.dims);
    switch (which) {
        case GraphOpKind::Eta:
            for (const auto& [e, w] : g.edges) out.edges[e] = -w;
            for (int v = 0; v < g.n; ++v) out.loops[v] = -g.loops[v];
            break;
        case GraphOpKind::L:
            out.edges = g.edges;
            break;
        case GraphOpKind::N:
            for (int v = 0; v < g.n; ++v) {
                double d = vertex_degree(g, v);
                out.loops[v] = std::abs(d) > kEdgeEps ? d : 0.0;
            }
            break;
        case GraphOpKind::Omega:
            out.loops = g.loops;
            break;
        case GraphOpKind::NL:
            for (int v = 0; v < g.n; ++v) {
                double d = vertex_degree(g, v) - g.loops[v];
                out.loops[v] = std::abs(d) > kEdgeEps ? d : 0.0;
            }
            break;
    }
    return out;
}

WeightedGraph modified_tensor_product(const WeightedGraph& g, const WeightedGraph& h) {
    check_same_shape(g, h);
    Mat mg = adjacency_matrix(g), mh = adjacency_matrix(h);
    Mat dg = diag_of(degrees(g)), dh = diag_of(degrees(h));
    Mat d0g = diag_of(g.loops), d0h = diag_of(h.loops);
    Mat lg = mg - d0g, lh = mh - d0h;  // loopless adjacency parts
    Mat prod;
    if (g.kind == GraphKind::Real)
        prod = -kron(lg, lh) + kron(lg, dh) + kron(dg, lh) + kron(d0g, d0h);
    else
        prod = kron(lg, lh) + kron(lg, dh) + kron(dg, lh) + kron(d0g, d0h) -
               2.0 * kron(Mat(dg - d0g), Mat(dh - d0h));
    Dims dims = g.dims;
    dims.insert(dims.end(), h.dims.begin(), h.dims.end());
    return graph_from_adjacency(prod, g.kind, dims);
}

WeightedGraph cartesian_product(const WeightedGraph& g, const WeightedGraph& h) {
    check_same_shape(g, h);
    Mat lg = adjacency_matrix(g) - diag_of(g.loops);
    Mat lh = adjacency_matrix(h) - diag_of(h.loops);
    Mat prod = kron(lg, diag_of(degrees(h))) + kron(diag_of(degrees(g)), lh);
    Dims dims = g.dims;
    dims.insert(dims.end(), h.dims.begin(), h.dims.end());
    return graph_from_adjacency(prod, g.kind, dims);
}

WeightedGraph graph_partial_transpose(const WeightedGraph& g, const Dims& dims,
                                      const PartitionSpec& p) {
    if (total_dim(dims) != g.n) throw std::invalid_argument("dims do not match vertex count");
    check_partition(p, static_cast<int>(dims.size()));
    Mat mt = partial_transpose(adjacency_matrix(g), dims, p.s);
    WeightedGraph out = graph_from_adjacency(mt, g.kind, dims);
    out.dims = g.dims;
    return out;
}

bool degree_criterion(const WeightedGraph& g, const Dims& dims, const PartitionSpec& p) {
    auto before = degrees(g);
    auto after = degrees(graph_partial_transpose(g, dims, p));
    for (size_t v = 0; v < before.size(); ++v)
        if (std::abs(before[v] - after[v]) > 1e-10) return false;
    return true;
}

PsdScreen psd_screen(const WeightedGraph& g) {
    auto d = degrees(g);
    for (int v = 0; v < g.n; ++v) {
        if (std::abs(d[v]) > kEdgeEps) continue;
        for (const auto& [e, w] : g.edges)
            if ((e.first == v || e.second == v) && std::abs(w) > kEdgeEps) return PsdScreen::NotPSD;
    }

    bool has_loop = false, all_loops_negative = true, all_loops_nonneg = true;
    for (double l : g.loops) {
        if (l != 0.0) has_loop = true;
        if (l >= 0.0) all_loops_negative = false;
        if (l < 0.0) all_loops_nonneg = false;
    }
    if (g.kind == GraphKind::Real && has_loop && all_loops_negative) return PsdScreen::NotPSD;

    if (g.kind == GraphKind::Real && !has_loop) {
        // Tree or cycle shape with a negative edge cannot be PSD.
        bool negative_edge = false;
        std::vector<std::vector<int>> adj(g.n);
        for (const auto& [e, w] : g.edges) {
            adj[e.first].push_back(e.second);
            adj[e.second].push_back(e.first);
            if (w.real() < 0.0) negative_edge = true;
        }
        if (negative_edge && g.n >= 2) {
            std::vector<char> seen(g.n, 0);
            std::queue<int> q;
            q.push(0);
            seen[0] = 1;
            int reached = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int u : adj[v])
                    if (!seen[u]) {
                        seen[u] = 1;
                        ++reached;
                        q.push(u);
                    }
            }
            bool connected = reached == g.n;
            long ecount = static_cast<long>(g.edges.size());
            bool tree = connected && ecount == g.n - 1;
            bool cycle = connected && g.n >= 4 && ecount == g.n &&
                         std::all_of(adj.begin(), adj.end(),
                                     [](const std::vector<int>& a) { return a.size() == 2; });
            if (tree || cycle) return PsdScreen::NotPSD;
        }
    }

    if (g.kind == GraphKind::Complex && all_loops_nonneg) return PsdScreen::PSD;
    if (g.kind == GraphKind::Real && all_loops_nonneg) {
        bool all_positive = true;
        for (const auto& [e, w] : g.edges)
            if (w.real() < 0.0) all_positive = false;
        if (all_positive) return PsdScreen::PSD;
    }
    return PsdScreen::Unknown;
}

WeightedGraph edit_edge(const WeightedGraph& g, int u, int v, cdouble weight, EdgeAction action) {
    check_vertex(g, u);
    check_vertex(g, v);
    WeightedGraph out = g;
    if (u == v) {
        if (action == EdgeAction::Add) {
            if (std::abs(weight.imag()) > kEdgeEps) throw std::invalid_argument("loop weight must be real");
            out.loops[u] = weight.real();
        } else {
            if (g.loops[u] == 0.0) throw std::invalid_argument("no loop to delete");
            out.loops[u] = 0.0;
        }
        return out;
    }
    if (u > v) std::swap(u, v);
    auto it = out.edges.find({u, v});
    if (action == EdgeAction::Add) {
        if (it != out.edges.end()) throw std::invalid_argument("edge already present");
        set_edge(out, u, v, weight);
        if (g.kind == GraphKind::Real && weight.real() < 0.0) {
            // Compensating loops keep the Laplacian positive semidefinite.
            out.loops[u] += 2.0 * std::abs(weight.real());
            out.loops[v] += 2.0 * std::abs(weight.real());
        }
        return out;
    }
    if (it == out.edges.end()) throw std::invalid_argument("no such edge to delete");
    cdouble removed = it->second;
    out.edges.erase(it);
    if (g.kind == GraphKind::Real && removed.real() > 0.0) {
        // Removing a positive edge re-derives the loop structure from the
        // remaining negative edges.
        std::fill(out.loops.begin(), out.loops.end(), 0.0);
        for (const auto& [e, w] : out.edges)
            if (w.real() < 0.0) {
                out.loops[e.first] += 2.0 * std::abs(w.real());
                out.loops[e.second] += 2.0 * std::abs(w.real());
            }
    }
    return out;
}

Mat observable_from_graph(const WeightedGraph& g) {
    Mat a = Mat::Zero(g.n, g.n);
    for (const auto& [w, v] : projector_decomposition(g)) a += w * (v * v.adjoint());
    return a;
}

std::string graph_to_json(const WeightedGraph& g) {
    nlohmann::json j;
    j["kind"] = g.kind == GraphKind::Real ? "real" : "complex";
    j["dims"] = g.dims;
    j["edges"] = nlohmann::json::array();
    for (const auto& [e, w] : g.edges)
        j["edges"].push_back({{"u", e.first}, {"v", e.second}, {"w", {w.real(), w.imag()}}});
    j["loops"] = nlohmann::json::array();
    for (int v = 0; v < g.n; ++v)
        if (g.loops[v] != 0.0) j["loops"].push_back({{"v", v}, {"w", g.loops[v]}});
    return j.dump(2);
}

WeightedGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("graph JSON parse error: ") + e.what());
    }
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind != "real" && kind != "complex") throw std::invalid_argument("kind must be real or complex");
        Dims dims = j.at("dims").get<Dims>();
        if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
        for (int d : dims)
            if (d < 1) throw std::invalid_argument("dims entries must be >= 1");
        WeightedGraph g(kind == "real" ? GraphKind::Real : GraphKind::Complex, dims);
        for (const auto& e : j.value("edges", nlohmann::json::array())) {
            auto w = e.at("w");
            set_edge(g, e.at("u").get<int>(), e.at("v").get<int>(),
                     cdouble(w.at(0).get<double>(), w.at(1).get<double>()));
        }
        for (const auto& l : j.value("loops", nlohmann::json::array())) {
            int v = l.at("v").get<int>();
            if (v < 0 || v >= g.n) throw std::invalid_argument("loop vertex out of range");
            g.loops[v] = l.at("w").get<double>();
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("graph JSON field error: ") + e.what());
    }
}

}  // namespace qent
