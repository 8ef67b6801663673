#pragma once

#include "qent/linalg.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qent {

// Real and complex weight fields use different Laplacian conventions, so the
// kind is part of the type and never mixes silently.
enum class GraphKind { Real, Complex };

// Vertices are 0-based. Edges are stored once with u < v; the complex
// convention a({v,u}) = conj(a({u,v})) is implicit. Loop weights are real.
struct WeightedGraph {
    GraphKind kind = GraphKind::Real;
    int n = 0;
    Dims dims;                                      // factor labeling, row-major; product == n
    std::map<std::pair<int, int>, cdouble> edges;
    std::vector<double> loops;

    explicit WeightedGraph(GraphKind k = GraphKind::Real, int vertices = 0)
        : kind(k), n(vertices), dims{vertices}, loops(vertices, 0.0) {}
    WeightedGraph(GraphKind k, Dims d)
        : kind(k), n(static_cast<int>(total_dim(d))), dims(std::move(d)), loops(n, 0.0) {}
};

// Inserts or overwrites one edge, normalizing orientation to u < v.
// Zero weights (|w| <= 1e-12) erase the edge.
void set_edge(WeightedGraph& g, int u, int v, cdouble w);
cdouble edge_weight(const WeightedGraph& g, int u, int v);

// Signed degree for real graphs, modulus degree for complex graphs; the loop
// weight counts once either way.
double vertex_degree(const WeightedGraph& g, int v);
std::vector<double> degrees(const WeightedGraph& g);
double degree_sum(const WeightedGraph& g);

// Adjacency matrix with loop weights on the diagonal.
Mat adjacency_matrix(const WeightedGraph& g);

// Real: Q = D - M + D0;  complex: Q = D + M - D0. Hermitian by construction.
Mat laplacian(const WeightedGraph& g);

// Q normalized by the degree sum. Throws when Q is not PSD or the sum is 0.
Mat density_from_graph(const WeightedGraph& g);

// Inverse of density_from_graph: real matrices get the real convention
// (edge weight -rho_ij), complex ones the complex convention (edge weight
// rho_ij); loops make each degree equal the diagonal entry. Round trips
// exactly.
WeightedGraph graph_from_density(const Mat& rho, const Dims& dims);

// Purity test sum d_i^2 + 2 sum |a_e|^2 == (sum d_i)^2, within 1e-9 relative.
bool is_pure_graph(const WeightedGraph& g);

// Weighted projector terms summing to the Laplacian; weights may be negative.
std::vector<std::pair<double, Vec>> projector_decomposition(const WeightedGraph& g);

// Mixes graphs so the resulting state is the convex combination of theirs.
WeightedGraph convex_combine(const std::vector<WeightedGraph>& graphs,
                             const std::vector<double>& weights);

// Graph of the reduced state after removing subsystem `part` (1-based).
WeightedGraph trace_out(const WeightedGraph& g, const Dims& dims, int part);

double von_neumann_entropy(const WeightedGraph& g);

enum class GraphOpKind { Eta, L, N, Omega, NL };
WeightedGraph graph_op(const WeightedGraph& g, GraphOpKind which);

// Product graph with Q(g x h) = Q(g) (x) Q(h).
WeightedGraph modified_tensor_product(const WeightedGraph& g, const WeightedGraph& h);

WeightedGraph cartesian_product(const WeightedGraph& g, const WeightedGraph& h);

// Edge relabeling that swaps the s-components of the two endpoints.
WeightedGraph graph_partial_transpose(const WeightedGraph& g, const Dims& dims,
                                      const PartitionSpec& p);

// True iff the degree matrix survives the partial transpose, within 1e-10.
bool degree_criterion(const WeightedGraph& g, const Dims& dims, const PartitionSpec& p);

enum class PsdScreen { PSD, NotPSD, Unknown };

// Structural positivity screen; Unknown means the caller must fall back to an
// eigenvalue check.
PsdScreen psd_screen(const WeightedGraph& g);

enum class EdgeAction { Add, Delete };

// Positivity-preserving structural edit. Adding a negative edge or deleting a
// positive one inserts compensating loops; deleting a missing edge throws.
WeightedGraph edit_edge(const WeightedGraph& g, int u, int v, cdouble weight, EdgeAction action);

// Hermitian observable assembled from the projector terms; numerically equal
// to the Laplacian but built without PSD or trace assumptions.
Mat observable_from_graph(const WeightedGraph& g);

std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);

}  // namespace qent
