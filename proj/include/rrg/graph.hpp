#ifndef RRG_GRAPH_HPP
#define RRG_GRAPH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rrg/rational.hpp"

namespace rrg {

using Edge = std::pair<int, int>; // stored normalized: first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Simple labeled graph on vertex set {0, ..., n-1}: edge set plus per-vertex
// sorted neighbor lists kept consistent. Immutable after construction;
// mutations produce new graphs.
class SimpleGraph {
  public:
    SimpleGraph() = default;
    SimpleGraph(int n, std::vector<Edge> edges); // validates, normalizes, sorts

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; } // lex sorted
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(int u, int v) const;
    int max_degree() const;

    bool contains(const SimpleGraph& sub) const;     // edge-set inclusion
    bool edge_disjoint(const SimpleGraph& other) const;

    bool operator==(const SimpleGraph& o) const {
        return n_ == o.n_ && edges_ == o.edges_;
    }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Validating constructor wrapper: loops and duplicate pairs are
// malformed-input errors, endpoints outside [0, n) are range errors.
SimpleGraph build_graph(int n, const std::vector<Edge>& edge_list);

// Degree sequence with the falling-factorial sums every estimate consumes.
class DegreeSequence {
  public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<int> values);
    static DegreeSequence regular(int n, int d);

    int size() const { return static_cast<int>(values_.size()); }
    int operator[](int i) const { return values_[i]; }
    const std::vector<int>& values() const { return values_; }
    long long m() const;          // M = sum of degrees
    long long mj(int j) const;    // M_j = sum of (d_i)_j
    int max_degree() const;
    bool is_regular() const;

    // Residual sequence after subtracting a graph's degrees (entry-wise).
    DegreeSequence minus(const SimpleGraph& h) const;

  private:
    std::vector<int> values_;
};

// M for j = 1, M_j otherwise.
long long degree_stats(const DegreeSequence& dseq, int j);

// Small pattern graph on t labeled vertices.
struct Pattern {
    int t = 0;
    SimpleGraph graph;

    Pattern() = default;
    Pattern(int t_, const std::vector<Edge>& edges) : t(t_), graph(build_graph(t_, edges)) {}
    int h() const { return graph.m(); }

    static Pattern cycle(int len);
    static Pattern clique(int k);
    static Pattern path(int num_edges);
};

// Exact automorphism group size by backtracking over degree-compatible
// vertex maps. Guarded to t <= 12.
long long aut_size(const Pattern& p);

// Balance deficiency at sub-edge-set size j:
//   min over edge subsets E' with |E'| = j of |V(E')|/t - j/h,
// with |V(E')| counting only vertices incident to a chosen edge. Exact.
Rat rho(const Pattern& p, int j);

// True iff rho(p, j) > 0 for every 1 <= j <= h-1.
bool is_strictly_balanced(const Pattern& p);

// All triangles of g, each listed once as a sorted vertex triple.
std::vector<std::array<int, 3>> enumerate_triangles(const SimpleGraph& g);

// Ordered tuple of triangles (vertex triples) over [n].
class TriangleTuple {
  public:
    TriangleTuple() = default;
    explicit TriangleTuple(std::vector<std::array<int, 3>> triangles);

    int k() const { return static_cast<int>(triangles_.size()); }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }

    // Vertex hit multiplicities h(v) for incident vertices, and the counts
    // h_j = #{v : h(v) = j}.
    std::vector<std::pair<int, int>> hit_multiplicities() const; // (vertex, h(v))
    std::vector<std::pair<int, int>> hit_counts() const;         // (j, h_j)

  private:
    std::vector<std::array<int, 3>> triangles_; // each triple sorted
};

// Number of vertex triples {x,y,z} whose three pair edges xy, yz, xz are each
// contained in some triangle of the tuple other than {x,y,z} itself.
// Brute force over all C(n',3) triples of tuple-incident vertices.
long long hole_count(const TriangleTuple& tuple);

// True iff #triangles(g) <= 3 * |E(g)|^{3/2}.
bool triangle_bound_holds(const SimpleGraph& g);

// ---- edge-list text format ----
// First line "n m", then m lines "u v" with 1-based vertex ids.
std::string serialize_graph(const SimpleGraph& g);
SimpleGraph parse_graph(const std::string& text);
SimpleGraph read_graph_file(const std::string& path);
void write_graph_file(const SimpleGraph& g, const std::string& path);

} // namespace rrg

#endif
